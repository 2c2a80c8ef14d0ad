"""Exact arithmetic for integer lattices Z^d and free groups F_k.

Elements carry canonical forms (integer vectors, freely reduced words), so
equality is structural and every enumeration downstream is deterministic.
"""

from __future__ import annotations

import itertools
import string

from .errors import SpecMismatchError

_LETTERS = string.ascii_lowercase


class GroupSpec:
    """Catalogue entry: IntegerLattice(d) as kind 'Z', FreeGroup(k) as kind 'F'."""

    __slots__ = ("kind", "rank")

    def __init__(self, kind: str, rank: int):
        if kind not in ("Z", "F"):
            raise ValueError(f"unknown group kind {kind!r}")
        if rank < 1:
            raise ValueError("rank must be >= 1")
        if kind == "F" and rank > 26:
            raise ValueError("free-group rank limited to 26 (one letter per generator)")
        self.kind = kind
        self.rank = rank

    def __eq__(self, other):
        return (
            isinstance(other, GroupSpec)
            and self.kind == other.kind
            and self.rank == other.rank
        )

    def __hash__(self):
        return hash((self.kind, self.rank))

    def __repr__(self):
        return f"GroupSpec({self.kind!r}, {self.rank})"

    @property
    def generator_labels(self) -> tuple[str, ...]:
        if self.kind == "Z":
            return tuple(f"e{j + 1}" for j in range(self.rank))
        return tuple(_LETTERS[: self.rank])

    def generators(self) -> tuple["GroupElement", ...]:
        if self.kind == "Z":
            gens = []
            for j in range(self.rank):
                vec = [0] * self.rank
                vec[j] = 1
                gens.append(GroupElement(self, tuple(vec)))
            return tuple(gens)
        return tuple(GroupElement(self, (j + 1,)) for j in range(self.rank))


def lattice(rank: int) -> GroupSpec:
    return GroupSpec("Z", rank)


def free_group(rank: int) -> GroupSpec:
    return GroupSpec("F", rank)


class GroupElement:
    """Canonical form: integer vector (Z^d) or freely reduced word (F_k).

    Free-group words are tuples of nonzero signed generator indices,
    +i for the i-th generator, -i for its inverse, with no adjacent
    cancelling pair.
    """

    __slots__ = ("spec", "data", "_key")

    def __init__(self, spec: GroupSpec, data: tuple):
        self.spec = spec
        self.data = data
        if spec.kind == "Z":
            self._key = data
        else:
            # shortlex: a < A < b < B < ...
            self._key = (len(data), tuple(_letter_rank(s) for s in data))

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement)
            and self.spec == other.spec
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.spec, self.data))

    def __lt__(self, other):
        if self.spec != other.spec:
            raise SpecMismatchError("comparing elements of different groups")
        return self._key < other._key

    def __repr__(self):
        return f"<{format_element(self)}>"

    def sort_key(self):
        return self._key

    def is_identity(self) -> bool:
        if self.spec.kind == "Z":
            return all(c == 0 for c in self.data)
        return len(self.data) == 0

    def inverse(self) -> "GroupElement":
        if self.spec.kind == "Z":
            return GroupElement(self.spec, tuple(-c for c in self.data))
        return GroupElement(self.spec, tuple(-s for s in reversed(self.data)))

    def word_length(self) -> int:
        if self.spec.kind == "Z":
            return max((abs(c) for c in self.data), default=0)
        return len(self.data)


def _letter_rank(signed: int) -> int:
    g = abs(signed) - 1
    return 2 * g + (0 if signed > 0 else 1)


def identity(spec: GroupSpec) -> GroupElement:
    if spec.kind == "Z":
        return GroupElement(spec, (0,) * spec.rank)
    return GroupElement(spec, ())


def _check_same_spec(a, b):
    if a.spec != b.spec:
        raise SpecMismatchError(f"mixed group specs {a.spec} and {b.spec}")


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """Group law in canonical form; free-group words reduce on the seam."""
    _check_same_spec(g, h)
    if g.spec.kind == "Z":
        return GroupElement(g.spec, tuple(a + b for a, b in zip(g.data, h.data)))
    left = list(g.data)
    for s in h.data:
        if left and left[-1] == -s:
            left.pop()
        else:
            left.append(s)
    return GroupElement(g.spec, tuple(left))


def inverse(g: GroupElement) -> GroupElement:
    return g.inverse()


class FiniteSubset:
    """Ordered finite subset of a group, kept in canonical sorted order."""

    __slots__ = ("spec", "elements", "_set")

    def __init__(self, spec: GroupSpec, elements):
        elems = sorted(set(elements), key=lambda e: e.sort_key())
        for e in elems:
            if e.spec != spec:
                raise SpecMismatchError("subset element from a different group")
        self.spec = spec
        self.elements = tuple(elems)
        self._set = frozenset(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        return isinstance(other, FiniteSubset) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        inner = ",".join(format_element(g) for g in self.elements)
        return f"{{{inner}}}"

    def sort_key(self):
        return tuple(e.sort_key() for e in self.elements)

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset(self.spec, self.elements + other.elements)

    def difference(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset(self.spec, [g for g in self.elements if g not in other])

    def intersection(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset(self.spec, [g for g in self.elements if g in other])

    def issubset(self, other: "FiniteSubset") -> bool:
        return all(g in other for g in self.elements)

    def translate(self, g: GroupElement) -> "FiniteSubset":
        """Left translate gF."""
        return FiniteSubset(self.spec, [mul(g, h) for h in self.elements])


def subset(spec: GroupSpec, elements) -> FiniteSubset:
    return FiniteSubset(spec, elements)


def empty_subset(spec: GroupSpec) -> FiniteSubset:
    return FiniteSubset(spec, [])


def set_product(f1: FiniteSubset, f2: FiniteSubset) -> FiniteSubset:
    if f1.spec != f2.spec:
        raise SpecMismatchError("set product across different groups")
    return FiniteSubset(f1.spec, [mul(a, b) for a in f1 for b in f2])


def set_inverse(f: FiniteSubset) -> FiniteSubset:
    return FiniteSubset(f.spec, [g.inverse() for g in f])


def ball(spec: GroupSpec, r: int) -> FiniteSubset:
    """Word-length ball of radius r; for Z^d the box {-r..r}^d, size (2r+1)^d."""
    if r < 0:
        raise ValueError("radius must be >= 0")
    if spec.kind == "Z":
        rng = range(-r, r + 1)
        return FiniteSubset(
            spec, [GroupElement(spec, v) for v in itertools.product(rng, repeat=spec.rank)]
        )
    # BFS over freely reduced words
    words = [()]
    frontier = [()]
    for _ in range(r):
        nxt = []
        for w in frontier:
            for s in range(1, spec.rank + 1):
                for signed in (s, -s):
                    if w and w[-1] == -signed:
                        continue
                    nxt.append(w + (signed,))
        words.extend(nxt)
        frontier = nxt
    return FiniteSubset(spec, [GroupElement(spec, w) for w in words])


def format_element(g: GroupElement) -> str:
    """Serial form: comma-separated integers (Z^d) or a letter word (F_k)."""
    if g.spec.kind == "Z":
        return ",".join(str(c) for c in g.data)
    out = []
    for s in g.data:
        letter = _LETTERS[abs(s) - 1]
        out.append(letter if s > 0 else letter.upper())
    return "".join(out)


def parse_element(spec: GroupSpec, text: str) -> GroupElement:
    """Inverse of format_element; the empty word is the free-group identity."""
    if spec.kind == "Z":
        parts = [p for p in text.split(",") if p != ""]
        if len(parts) != spec.rank:
            raise ValueError(f"expected {spec.rank} coordinates, got {text!r}")
        return GroupElement(spec, tuple(int(p) for p in parts))
    word = identity(spec)
    for ch in text:
        low = ch.lower()
        if low not in _LETTERS[: spec.rank]:
            raise ValueError(f"unknown generator letter {ch!r}")
        s = _LETTERS.index(low) + 1
        letter = GroupElement(spec, (s if ch.islower() else -s,))
        word = mul(word, letter)
    return word
