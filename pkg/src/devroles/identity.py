"""Alias resolution: merge contributor identities from git and mail archives.

Both archives identify people by free-form (name, email) pairs. A single
person commonly appears under several spellings, so all raw identities are
collected first and then partitioned into canonical persons. Two raw
identities belong to the same person when they are connected, transitively,
by an identical normalized email or by an identical normalized "mergeable"
name (at least two whitespace-separated tokens and at least seven characters
in total; shorter names are too ambiguous to merge on).
"""

from __future__ import annotations

import csv
import re
from collections import Counter
from dataclasses import dataclass, field

_WS = re.compile(r"\s+")
_EDGE_PUNCT = "\"'<>()[]{}.,;: \t"

MIN_NAME_TOKENS = 2
MIN_NAME_LENGTH = 7


@dataclass(frozen=True)
class RawIdentity:
    """One (name, email) occurrence taken verbatim from an archive."""

    name: str
    email: str
    source: str = "vcs"  # "vcs" or "mail"

    def __post_init__(self):
        if not self.name and not self.email:
            raise ValueError("raw identity needs a name or an email")


@dataclass(frozen=True)
class Person:
    """A canonical contributor aggregating all of their aliases."""

    id: int
    key: str
    canonical_name: str
    names: frozenset[str]
    emails: frozenset[str]


def normalize_name(name: str) -> str:
    """Lowercase, strip surrounding quotes/punctuation, collapse whitespace."""
    return _WS.sub(" ", name.strip(_EDGE_PUNCT).lower()).strip()


def normalize_email(email: str) -> str:
    """Lowercase and strip surrounding whitespace and angle brackets."""
    return email.strip().strip("<>").strip().lower()


def normalize_identity(raw: RawIdentity) -> tuple[str, str]:
    """Return the normalized (name, email) pair for a raw identity."""
    return normalize_name(raw.name), normalize_email(raw.email)


def _name_is_mergeable(name: str) -> bool:
    return len(name.split()) >= MIN_NAME_TOKENS and len(name) >= MIN_NAME_LENGTH


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, a: int, b: int):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller index as root so ids follow first occurrence
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class Registry:
    """Immutable result of resolving raw identities into persons."""

    persons: list[Person]
    _email_to_person: dict[str, int] = field(repr=False, default_factory=dict)
    _name_to_person: dict[str, int] = field(repr=False, default_factory=dict)
    _pair_to_person: dict[tuple[str, str], int] = field(repr=False, default_factory=dict)

    def alias_pairs(self) -> list[tuple[str, str]]:
        """All distinct normalized (name, email) pairs seen at resolve time."""
        return list(self._pair_to_person)

    def lookup(self, raw: RawIdentity) -> Person:
        """Map a raw identity to its person; raises KeyError if unseen."""
        name, email = normalize_identity(raw)
        if email and email in self._email_to_person:
            return self.persons[self._email_to_person[email]]
        if name and name in self._name_to_person:
            return self.persons[self._name_to_person[name]]
        if (name, email) in self._pair_to_person:
            return self.persons[self._pair_to_person[(name, email)]]
        raise KeyError(f"unknown identity: {raw.name!r} <{raw.email!r}>")

    def person_by_id(self, person_id: int) -> Person:
        return self.persons[person_id]

    def person_by_key(self, key: str) -> Person | None:
        for p in self.persons:
            if p.key == key:
                return p
        return None

    def key_of(self, person_id: int) -> str:
        return self.persons[person_id].key


def load_alias_overrides(path) -> dict[str, str]:
    """Read an alias-override CSV of `email_or_name,person_key` rows.

    Keys are normalized with the same rules as archive identities. Rows
    starting with '#' and blank rows are ignored.
    """
    overrides: dict[str, str] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 2:
                raise ValueError(f"alias override rows need 2 fields, got {row!r}")
            alias = row[0].strip()
            norm = normalize_email(alias) if "@" in alias else normalize_name(alias)
            overrides[norm] = row[1].strip()
    return overrides


def resolve(raws: list[RawIdentity], overrides: dict[str, str] | None = None) -> Registry:
    """Partition raw identities into persons.

    Two raws map to the same person iff they are connected transitively by an
    identical normalized non-empty email or an identical mergeable normalized
    name. Identical (name, email) pairs are always the same person. Entries
    matched by `overrides` (normalized email or name -> person key) are pinned
    to the override group and excluded from heuristic merging; the override
    key becomes the person key.

    Person ids are assigned in order of first occurrence, so the partition and
    ids are stable for a fixed input ordering and insensitive to permutation
    up to relabeling.
    """
    if not raws:
        raise ValueError("resolve() needs at least one raw identity")
    overrides = overrides or {}

    normed = [normalize_identity(r) for r in raws]

    # Group index per unique normalized pair; merging happens between groups.
    pair_index: dict[tuple[str, str], int] = {}
    order: list[tuple[str, str]] = []
    counts: Counter[tuple[str, str]] = Counter()
    for pair in normed:
        if pair not in pair_index:
            pair_index[pair] = len(order)
            order.append(pair)
        counts[pair] += 1

    override_group: dict[int, str] = {}
    for pair, idx in pair_index.items():
        name, email = pair
        pinned = overrides.get(email) if email else None
        if pinned is None and name:
            pinned = overrides.get(name)
        if pinned is not None:
            override_group[idx] = pinned

    uf = _UnionFind(len(order))
    first_email: dict[str, int] = {}
    first_name: dict[str, int] = {}
    pinned_key_first: dict[str, int] = {}
    for idx, (name, email) in enumerate(order):
        pinned = override_group.get(idx)
        if pinned is not None:
            if pinned in pinned_key_first:
                uf.union(pinned_key_first[pinned], idx)
            else:
                pinned_key_first[pinned] = idx
            continue
        if email:
            if email in first_email:
                uf.union(first_email[email], idx)
            else:
                first_email[email] = idx
        if name and _name_is_mergeable(name):
            if name in first_name:
                uf.union(first_name[name], idx)
            else:
                first_name[name] = idx

    # Materialize persons in order of each component's first occurrence.
    root_to_person: dict[int, int] = {}
    members: list[list[int]] = []
    for idx in range(len(order)):
        root = uf.find(idx)
        if root not in root_to_person:
            root_to_person[root] = len(members)
            members.append([])
        members[root_to_person[root]].append(idx)

    persons: list[Person] = []
    email_map: dict[str, int] = {}
    name_map: dict[str, int] = {}
    pair_map: dict[tuple[str, str], int] = {}
    for pid, idxs in enumerate(members):
        names: set[str] = set()
        emails: set[str] = set()
        name_counts: Counter[str] = Counter()
        pinned_key: str | None = None
        for idx in idxs:
            name, email = order[idx]
            if name:
                names.add(name)
                name_counts[name] += counts[order[idx]]
            if email:
                emails.add(email)
            if idx in override_group:
                pinned_key = override_group[idx]
        if name_counts:
            top = max(name_counts.values())
            canonical = min(n for n, c in name_counts.items() if c == top)
        else:
            canonical = min(emails) if emails else ""
        if pinned_key is not None:
            key = pinned_key
        elif emails:
            key = min(emails)
        else:
            key = f"{canonical}#{pid}"
        persons.append(Person(pid, key, canonical, frozenset(names), frozenset(emails)))
        for idx in idxs:
            name, email = order[idx]
            if email:
                email_map[email] = pid
            if name and (_name_is_mergeable(name) or not email):
                name_map.setdefault(name, pid)
            pair_map[order[idx]] = pid

    return Registry(persons, email_map, name_map, pair_map)
