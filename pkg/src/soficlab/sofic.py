"""Finite permutation models sigma: Gamma -> Sym(V) and their quality."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import SpecMismatchError
from .groups import FiniteSubset, GroupElement, GroupSpec, free_group, lattice, mul


class SoficMap:
    """Per-generator permutations of V = {0..n-1}, evaluated along canonical words.

    Both shipped builders (torus quotients of Z^d, independent random
    permutations for F_k) yield exact homomorphisms, so only the freeness
    clause of F-goodness is ever at stake.
    """

    __slots__ = ("spec", "n", "gen_images", "provenance", "seed", "_cache")

    def __init__(self, spec: GroupSpec, gen_images, provenance: str, seed=None):
        self.spec = spec
        self.n = len(gen_images[0])
        self.gen_images = [np.asarray(img, dtype=np.int64) for img in gen_images]
        if len(self.gen_images) != spec.rank:
            raise ValueError("need one permutation per generator")
        for img in self.gen_images:
            if img.shape != (self.n,) or not np.array_equal(np.sort(img), np.arange(self.n)):
                raise ValueError("generator image is not a permutation of 0..n-1")
        self.provenance = provenance
        self.seed = seed
        self._cache: dict[tuple, np.ndarray] = {}

    def permutation(self, g: GroupElement) -> np.ndarray:
        """Image array of sigma(g); composed along the canonical form of g."""
        if g.spec != self.spec:
            raise SpecMismatchError("element from a different group")
        cached = self._cache.get(g.data)
        if cached is not None:
            return cached
        n = self.n
        out = np.arange(n)
        if self.spec.kind == "Z":
            for j, c in enumerate(g.data):
                if c == 0:
                    continue
                base = self.gen_images[j] if c > 0 else _invert(self.gen_images[j])
                for _ in range(abs(c)):
                    out = base[out]
        else:
            # sigma(s1 s2 ... sm) = sigma(s1) o ... o sigma(sm)
            for s in reversed(g.data):
                base = self.gen_images[s - 1] if s > 0 else _invert(self.gen_images[-s - 1])
                out = base[out]
        self._cache[g.data] = out
        return out

    def apply(self, g: GroupElement, v: int) -> int:
        return int(self.permutation(g)[v])


def _invert(perm: np.ndarray) -> np.ndarray:
    return np.argsort(perm)


def build_torus(sides) -> SoficMap:
    """Quotient model of Z^d on the product of cyclic groups given by sides.

    Generator e_j acts by +1 on coordinate j; an exact homomorphism.
    """
    sides = tuple(int(s) for s in sides)
    if any(s < 1 for s in sides):
        raise ValueError("every side must be >= 1")
    spec = lattice(len(sides))
    n = int(np.prod(sides))
    grid = np.arange(n).reshape(sides)
    images = [np.roll(grid, -1, axis=j).reshape(-1) for j in range(len(sides))]
    return SoficMap(spec, images, provenance="torus")


def build_random_perm(k: int, n: int, seed: int) -> SoficMap:
    """Independent uniform permutations per generator of F_k, from a split seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    spec = free_group(k)
    children = np.random.SeedSequence(seed).spawn(k)
    images = [np.random.default_rng(c).permutation(n) for c in children]
    return SoficMap(spec, images, provenance="random-perm", seed=seed)


def is_f_good(sigma: SoficMap, window: FiniteSubset, v: int) -> bool:
    """Both clauses at one vertex: products compose exactly and images are distinct."""
    if not 0 <= v < sigma.n:
        raise ValueError(f"vertex {v} out of range")
    if len(window) == 0:
        raise ValueError("window must be nonempty")
    elems = list(window)
    seen = set()
    for s in elems:
        img = sigma.apply(s, v)
        if img in seen:
            return False
        seen.add(img)
    for s in elems:
        for t in elems:
            if sigma.apply(mul(s, t), v) != sigma.apply(s, sigma.apply(t, v)):
                return False
    return True


def good_vertex_mask(sigma: SoficMap, window: FiniteSubset) -> np.ndarray:
    """Boolean mask over V of window-good vertices (vectorized is_f_good)."""
    if len(window) == 0:
        raise ValueError("window must be nonempty")
    elems = list(window)
    perms = {g.data: sigma.permutation(g) for g in elems}
    good = np.ones(sigma.n, dtype=bool)
    for s in elems:
        for t in elems:
            st = mul(s, t)
            good &= sigma.permutation(st) == perms[s.data][perms[t.data]]
    for i, s in enumerate(elems):
        for t in elems[i + 1 :]:
            good &= perms[s.data] != perms[t.data]
    return good


def goodness_fraction(sigma: SoficMap, window: FiniteSubset) -> Fraction:
    """Exact fraction of window-good vertices."""
    mask = good_vertex_mask(sigma, window)
    return Fraction(int(mask.sum()), sigma.n)


def write_model_file(sigma: SoficMap, path) -> None:
    """One header line, then one space-separated image array per generator."""
    spec = sigma.spec
    group_line = f"group {spec.kind} {spec.rank}"
    seed = sigma.seed if sigma.seed is not None else 0
    lines = [f"sofic {group_line} n={sigma.n} seed={seed}"]
    for img in sigma.gen_images:
        lines.append(" ".join(str(int(x)) for x in img))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_model_file(path) -> SoficMap:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    head = lines[0].split()
    if head[0] != "sofic" or head[1] != "group":
        raise ValueError("not a sofic model file")
    spec = GroupSpec(head[2], int(head[3]))
    seed = int(head[-1].split("=", 1)[1])
    images = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(images) != spec.rank:
        raise ValueError("generator line count does not match rank")
    return SoficMap(spec, images, provenance="file", seed=seed)
