"""Patterns, subshifts, interchangeability, TMP search and pattern exchange."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import (
    OverlapConflictError,
    SizeLimitError,
    SpecMismatchError,
    UnsupportedShapeError,
)
from .groups import (
    FiniteSubset,
    GroupElement,
    GroupSpec,
    ball,
    empty_subset,
    identity,
    lattice,
    mul,
    set_inverse,
    set_product,
    subset,
)
from .transfer import ZSFTOracle

_ANNULUS_CAP = 1 << 20
_GAP_CAP = 1 << 16


class Pattern:
    """A symbol assignment on a finite subset of the group."""

    __slots__ = ("support", "values", "_lookup")

    def __init__(self, support: FiniteSubset, values):
        values = tuple(values)
        if len(values) != len(support):
            raise ValueError("one value per support element required")
        self.support = support
        self.values = values
        self._lookup = dict(zip(support.elements, values))

    @classmethod
    def from_dict(cls, spec: GroupSpec, assignment: dict) -> "Pattern":
        sup = FiniteSubset(spec, assignment.keys())
        return cls(sup, tuple(assignment[g] for g in sup))

    def value_at(self, g: GroupElement) -> int:
        return self._lookup[g]

    def get(self, g: GroupElement):
        return self._lookup.get(g)

    def items(self):
        return zip(self.support.elements, self.values)

    def restrict(self, sub: FiniteSubset) -> "Pattern":
        return Pattern(sub, tuple(self._lookup[g] for g in sub))

    def __eq__(self, other):
        return (
            isinstance(other, Pattern)
            and self.support == other.support
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.support, self.values))

    def __repr__(self):
        cells = ", ".join(f"{g!r}:{v}" for g, v in self.items())
        return f"Pattern({cells})"

    @property
    def spec(self) -> GroupSpec:
        return self.support.spec

    def is_interval(self) -> bool:
        """Over Z only: support is a contiguous range."""
        if self.spec != lattice(1):
            return False
        coords = [g.data[0] for g in self.support]
        return len(coords) == 0 or max(coords) - min(coords) + 1 == len(coords)

    def as_word(self) -> tuple[int, ...]:
        """Values in increasing coordinate order (Z interval supports)."""
        if not self.is_interval():
            raise UnsupportedShapeError("pattern support is not an interval over Z")
        return self.values  # canonical order of Z subsets is increasing


def shift_pattern(g: GroupElement, p: Pattern) -> Pattern:
    """Left shift: support gF, value at gh equals p(h)."""
    if g.spec != p.spec:
        raise SpecMismatchError("shift by element of a different group")
    return Pattern.from_dict(p.spec, {mul(g, h): v for h, v in p.items()})


def concatenate(p: Pattern, q: Pattern) -> Pattern:
    """Union of two patterns; they must agree where supports intersect."""
    merged = dict(p.items())
    for g, v in q.items():
        if g in merged and merged[g] != v:
            raise OverlapConflictError(f"patterns disagree at {g!r}")
        merged[g] = v
    return Pattern.from_dict(p.spec, merged)


@dataclass(frozen=True)
class InterchangeVerdict:
    """Yes / No(witness annulus pattern) / Unknown(radius exhausted)."""

    outcome: str
    witness: Optional[Pattern] = None

    @property
    def is_yes(self):
        return self.outcome == "yes"

    @property
    def is_no(self):
        return self.outcome == "no"

    @property
    def is_unknown(self):
        return self.outcome == "unknown"


YES = InterchangeVerdict("yes")
UNKNOWN = InterchangeVerdict("unknown")


class Subshift:
    """Shift space given by forbidden patterns or a named admissibility oracle.

    Oracle subshifts decide global admissibility of any finite pattern
    directly; `oracle_exact_radius` is the annulus radius from which the
    interchange check is a complete proof for that oracle.
    """

    def __init__(
        self,
        spec: GroupSpec,
        alphabet,
        forbidden=None,
        oracle: Optional[Callable[[Pattern], bool]] = None,
        oracle_name: Optional[str] = None,
        oracle_exact_radius: Optional[int] = None,
    ):
        self.spec = spec
        self.alphabet = tuple(str(a) for a in alphabet)
        if (forbidden is None) == (oracle is None):
            raise ValueError("exactly one of forbidden / oracle must be given")
        self.forbidden = tuple(forbidden) if forbidden is not None else None
        self.oracle = oracle
        self.oracle_name = oracle_name
        self.oracle_exact_radius = oracle_exact_radius
        if self.forbidden is not None:
            for q in self.forbidden:
                if len(q.support) == 0:
                    raise ValueError("forbidden patterns need nonempty support")
                if q.spec != spec:
                    raise SpecMismatchError("forbidden pattern over a different group")
        self._z_oracle: Optional[ZSFTOracle] = None

    @property
    def n_symbols(self) -> int:
        return len(self.alphabet)

    @property
    def is_forbidden_kind(self) -> bool:
        return self.forbidden is not None

    @property
    def is_full_shift(self) -> bool:
        if self.forbidden is not None:
            return len(self.forbidden) == 0
        return self.oracle_name == "full"

    def forbidden_span(self) -> int:
        """Largest forbidden-support diameter (word length metric); 0 if none."""
        span = 0
        for q in self.forbidden or ():
            for g in q.support:
                for h in q.support:
                    span = max(span, mul(g.inverse(), h).word_length())
        return span

    def z_oracle(self) -> ZSFTOracle:
        if self.spec != lattice(1) or self.forbidden is None:
            raise UnsupportedShapeError("transfer oracle needs a forbidden-list Z subshift")
        if self._z_oracle is None:
            fb = []
            for q in self.forbidden:
                offsets = tuple(g.data[0] for g in q.support)
                fb.append((offsets, q.values))
            self._z_oracle = ZSFTOracle(self.n_symbols, fb)
        return self._z_oracle

    def symbol_index(self, name: str) -> int:
        return self.alphabet.index(name)


def full_shift(spec: GroupSpec, alphabet) -> Subshift:
    return Subshift(
        spec,
        alphabet,
        oracle=lambda p: True,
        oracle_name="full",
        oracle_exact_radius=0,
    )


def sunny_side_up(spec: GroupSpec) -> Subshift:
    """Binary configurations with at most one 1 anywhere."""

    def at_most_one_one(p: Pattern) -> bool:
        return sum(1 for v in p.values if v == 1) <= 1

    return Subshift(
        spec,
        ("0", "1"),
        oracle=at_most_one_one,
        oracle_name="sunny_side_up",
        oracle_exact_radius=1,
    )


def golden_mean_shift() -> Subshift:
    """Binary Z shift forbidding adjacent ones."""
    spec = lattice(1)
    cells = subset(spec, [identity(spec), GroupElement(spec, (1,))])
    return Subshift(spec, ("0", "1"), forbidden=[Pattern(cells, (1, 1))])


def product_with_full_shift(x: Subshift, arity: int = 2) -> Subshift:
    """Direct product with a full shift on `arity` symbols (lifted forbidden list)."""
    if not x.is_forbidden_kind:
        raise UnsupportedShapeError("product lift needs a forbidden-list subshift")
    alphabet = [f"{a}|{b}" for a in x.alphabet for b in range(arity)]
    lifted = []
    for q in x.forbidden:
        k = len(q.support)
        for combo in itertools.product(range(arity), repeat=k):
            values = tuple(v * arity + b for v, b in zip(q.values, combo))
            lifted.append(Pattern(q.support, values))
    return Subshift(x.spec, alphabet, forbidden=lifted)


def locally_admissible(x: Subshift, p: Pattern) -> bool:
    """No shifted forbidden pattern embeds inside supp(p)."""
    if not x.is_forbidden_kind:
        return x.oracle(p)
    for q in x.forbidden:
        anchor = q.support.elements[0]
        for target in p.support:
            g = mul(target, anchor.inverse())
            hit = True
            for s, v in q.items():
                cell = mul(g, s)
                got = p.get(cell)
                if got is None or got != v:
                    hit = False
                    break
            if hit:
                return False
    return True


def window_admissible(x: Subshift, p: Pattern) -> bool:
    """Admissibility proxy on a finite window: oracle if present, else local."""
    if x.is_forbidden_kind:
        return locally_admissible(x, p)
    return x.oracle(p)


def globally_admissible_z(x: Subshift, p: Pattern) -> bool:
    """Exact membership in the admissible-pattern language over Z (interval support)."""
    if x.spec != lattice(1):
        raise UnsupportedShapeError("global admissibility oracle is Z-only")
    if not x.is_forbidden_kind:
        return x.oracle(p)
    if len(p.support) == 0:
        return x.z_oracle().nonempty
    if not p.is_interval():
        raise UnsupportedShapeError("support must be an interval; see gap-filling helper")
    return x.z_oracle().globally_admissible(p.as_word())


def globally_admissible_z_any(x: Subshift, p: Pattern) -> bool:
    """Global admissibility over Z for any finite support, by filling hull gaps."""
    if not x.is_forbidden_kind:
        return x.oracle(p)
    if x.spec != lattice(1):
        raise UnsupportedShapeError("gap-filling oracle is Z-only")
    if len(p.support) == 0:
        return x.z_oracle().nonempty
    coords = {g.data[0]: v for g, v in p.items()}
    lo, hi = min(coords), max(coords)
    gaps = [c for c in range(lo, hi + 1) if c not in coords]
    if x.n_symbols ** len(gaps) > _GAP_CAP:
        raise SizeLimitError("too many gap cells to fill exactly")
    oracle = x.z_oracle()
    for fill in itertools.product(range(x.n_symbols), repeat=len(gaps)):
        word = []
        it = iter(fill)
        for c in range(lo, hi + 1):
            word.append(coords[c] if c in coords else next(it))
        if oracle.globally_admissible(tuple(word)):
            return True
    return False


def _extendability_checker(x: Subshift):
    """(checker, certified) where certified means the answer is exact."""
    if not x.is_forbidden_kind:
        return x.oracle, True
    if x.spec == lattice(1):
        return (lambda p: globally_admissible_z_any(x, p)), True
    return (lambda p: locally_admissible(x, p)), False


def exactness_radius(x: Subshift) -> Optional[int]:
    """Annulus radius from which the interchange check is a complete proof."""
    if not x.is_forbidden_kind:
        return x.oracle_exact_radius
    if x.is_full_shift:
        return 0
    if x.spec == lattice(1):
        return x.forbidden_span()
    return None


def interchangeable(x: Subshift, p: Pattern, q: Pattern, annulus_radius: int) -> InterchangeVerdict:
    """Decide whether p and q can replace each other in every configuration.

    Enumerates annulus contexts w on supp(p)*ball(r) minus supp(p) and
    compares extendability of p|w and q|w.  Yes is only claimed when the
    radius reaches the subshift's exactness bound; an uncertified
    difference downgrades to Unknown rather than a false witness.
    """
    if p.support != q.support:
        raise SpecMismatchError("patterns must share their support")
    if p == q:
        return YES
    if x.is_full_shift:
        return YES
    checker, certified = _extendability_checker(x)
    r_exact = exactness_radius(x)
    exact = r_exact is not None and annulus_radius >= r_exact
    annulus = set_product(p.support, ball(x.spec, annulus_radius)).difference(p.support)
    if x.n_symbols ** len(annulus) > _ANNULUS_CAP:
        raise SizeLimitError("annulus enumeration too large")
    saw_uncertified_difference = False
    for assignment in itertools.product(range(x.n_symbols), repeat=len(annulus)):
        w = Pattern(annulus, assignment)
        a_p = checker(concatenate(p, w))
        a_q = checker(concatenate(q, w))
        if a_p != a_q:
            if certified:
                return InterchangeVerdict("no", witness=w)
            saw_uncertified_difference = True
    if saw_uncertified_difference or not exact:
        return UNKNOWN
    return YES


def enumerate_admissible_patterns(x: Subshift, window: FiniteSubset, cap: int = 1 << 20):
    """Globally admissible window patterns where decidable (Z / oracle), else local."""
    if x.n_symbols ** len(window) > cap:
        raise SizeLimitError("window enumeration too large")
    if x.is_forbidden_kind and x.spec == lattice(1):
        keep = lambda p: globally_admissible_z_any(x, p)
    else:
        keep = lambda p: window_admissible(x, p)
    out = []
    for assignment in itertools.product(range(x.n_symbols), repeat=len(window)):
        p = Pattern(window, assignment)
        if keep(p):
            out.append(p)
    return out


@dataclass
class TmpSearchResult:
    """Outcome of the memory-set search for a finite set A."""

    memory_set: Optional[FiniteSubset]
    radius: Optional[int]
    counterexample: Optional[tuple[Pattern, Pattern]]
    counterexample_verdict: Optional[InterchangeVerdict]

    @property
    def found(self):
        return self.memory_set is not None


def tmp_memory_search(x: Subshift, a: FiniteSubset, max_radius: int) -> TmpSearchResult:
    """Smallest B = A*ball(r), r <= max_radius, that acts as a memory set of A.

    B qualifies when every pair of globally admissible B-patterns agreeing
    on B minus A is interchangeable (verdict Yes).  Returns None with the
    blocking pair if the radius budget is exhausted.
    """
    if len(a) == 0:
        raise ValueError("A must be nonempty")
    r_ann = exactness_radius(x)
    if r_ann is None:
        r_ann = max_radius + 1  # best effort; verdicts may stay Unknown
    last_pair = None
    last_verdict = None
    for r in range(max_radius + 1):
        b = set_product(a, ball(x.spec, r))
        patterns = enumerate_admissible_patterns(x, b)
        groups: dict[tuple, list[Pattern]] = {}
        boundary = b.difference(a)
        for p in patterns:
            key = tuple(p.value_at(g) for g in boundary)
            groups.setdefault(key, []).append(p)
        ok = True
        for members in groups.values():
            for i, p in enumerate(members):
                for q in members[i + 1 :]:
                    verdict = interchangeable(x, p, q, r_ann)
                    if not verdict.is_yes:
                        ok = False
                        last_pair = (p, q)
                        last_verdict = verdict
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return TmpSearchResult(b, r, None, None)
    return TmpSearchResult(None, None, last_pair, last_verdict)


def has_trivial_overlaps(x_pat: Pattern, y_pat: Pattern, f1: FiniteSubset, f2: FiniteSubset) -> bool:
    """No translate in F2 F1^-1 minus identity can lay either pattern over the other."""
    _check_exchange_supports(x_pat, y_pat, f1, f2)
    pats = (x_pat, y_pat)
    for g in set_product(f2, set_inverse(f1)):
        if g.is_identity():
            continue
        overlap = f2.intersection(f2.translate(g))
        if len(overlap) == 0:
            return False
        g_inv = g.inverse()
        for a in pats:
            for b in pats:
                if all(b.value_at(mul(g_inv, h)) == a.value_at(h) for h in overlap):
                    return False
    return True


def is_self_overlapping(x_pat: Pattern, f1: FiniteSubset, f2: FiniteSubset) -> bool:
    """Some nontrivial translate matches x on (F2 minus F1) overlaps.

    Empty overlap counts as self-overlapping, matching the convention that
    the condition is satisfied automatically there.
    """
    if not f1.issubset(f2):
        raise SpecMismatchError("F1 must be contained in F2")
    if x_pat.support != f2:
        raise SpecMismatchError("pattern support must equal F2")
    core = f2.difference(f1)
    for g in set_product(f2, set_inverse(f1)):
        if g.is_identity():
            continue
        overlap = core.intersection(core.translate(g))
        if len(overlap) == 0:
            return True
        g_inv = g.inverse()
        if all(x_pat.value_at(mul(g_inv, h)) == x_pat.value_at(h) for h in overlap):
            return True
    return False


def _check_exchange_supports(x_pat, y_pat, f1, f2):
    if x_pat.support != f2 or y_pat.support != f2:
        raise SpecMismatchError("exchange patterns must have support F2")
    if not f1.issubset(f2):
        raise SpecMismatchError("F1 must be contained in F2")


@dataclass(frozen=True)
class ExchangeRule:
    """Validated data for the pattern-exchange endomorphism (y replaced by x)."""

    x_pat: Pattern
    y_pat: Pattern
    f1: FiniteSubset
    f2: FiniteSubset

    def __post_init__(self):
        _check_exchange_supports(self.x_pat, self.y_pat, self.f1, self.f2)
        core = self.f2.difference(self.f1)
        for g in core:
            if self.x_pat.value_at(g) != self.y_pat.value_at(g):
                raise SpecMismatchError("patterns must agree on F2 minus F1")
        if not has_trivial_overlaps(self.x_pat, self.y_pat, self.f1, self.f2):
            raise SpecMismatchError("patterns lack trivial overlaps within F2")

    def lookup_window(self) -> FiniteSubset:
        """Cells around a point needed to decide its rewritten value."""
        return set_product(set_inverse(self.f1), self.f2)


def exchange_map_apply(rule: ExchangeRule, z: Pattern) -> Pattern:
    """Apply the exchange endomorphism to a window pattern.

    Returns the rewritten pattern on the deflated window W' of cells whose
    whole lookup window sits inside supp(z).
    """
    look = rule.lookup_window()
    w = z.support
    core = [g for g in w if all(mul(g, l) in w for l in look)]
    if not core:
        raise UnsupportedShapeError("window too small for any rewritten cell")
    shifted = {
        h: [mul(h.inverse(), f) for f in rule.f2] for h in rule.f1
    }
    out = {}
    for g in core:
        value = z.value_at(g)
        for h in rule.f1:
            offs = shifted[h]
            if all(
                z.value_at(mul(g, o)) == rule.y_pat.value_at(f)
                for o, f in zip(offs, rule.f2.elements)
            ):
                value = rule.x_pat.value_at(h)
                break
        out[g] = value
    return Pattern.from_dict(z.spec, out)
