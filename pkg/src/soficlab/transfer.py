"""Exact extendability oracle for Z subshifts of finite type.

Words are recoded to blocks of length m (the maximal forbidden-pattern span,
at least 1), giving a vertex shift whose bi-extendable paths decide global
admissibility of interval patterns.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import SizeLimitError

_STATE_CAP = 1 << 20


class ZSFTOracle:
    """Reachability oracle for a Z-SFT given by forbidden words at offsets."""

    def __init__(self, n_symbols: int, forbidden, block: int = 1):
        self.n_symbols = n_symbols
        self.forbidden = []
        span = 0
        for offsets, values in forbidden:
            base = min(offsets)
            rel = tuple(o - base for o in offsets)
            order = sorted(range(len(rel)), key=lambda i: rel[i])
            rel = tuple(rel[i] for i in order)
            vals = tuple(values[i] for i in order)
            self.forbidden.append((rel, vals))
            span = max(span, rel[-1])
        self.span = span
        self.m = max(1, span, block)
        if n_symbols**self.m > _STATE_CAP:
            raise SizeLimitError(f"block length {self.m} over {n_symbols} symbols is too large")
        self._build()

    def word_locally_admissible(self, word) -> bool:
        length = len(word)
        for rel, vals in self.forbidden:
            reach = rel[-1]
            for a in range(length - reach):
                if all(word[a + o] == v for o, v in zip(rel, vals)):
                    return False
        return True

    def _build(self):
        m = self.m
        states = [
            w
            for w in itertools.product(range(self.n_symbols), repeat=m)
            if self.word_locally_admissible(w)
        ]
        index = {w: i for i, w in enumerate(states)}
        out_edges = [[] for _ in states]
        in_edges = [[] for _ in states]
        for i, u in enumerate(states):
            for a in range(self.n_symbols):
                w = u + (a,)
                if not self.word_locally_admissible(w):
                    continue
                j = index.get(w[1:])
                if j is not None:
                    out_edges[i].append(j)
                    in_edges[j].append(i)
        self.states = states
        self.state_index = index
        self.out_edges = out_edges
        self.in_edges = in_edges
        self.forward_ok = _prune(out_edges)
        self.backward_ok = _prune(in_edges)
        self.nonempty = any(
            f and b for f, b in zip(self.forward_ok, self.backward_ok)
        )

    def globally_admissible(self, word) -> bool:
        """Membership of an interval word in the language of the subshift."""
        word = tuple(word)
        m = self.m
        if len(word) < m:
            return any(
                self.globally_admissible(word + ext)
                for ext in itertools.product(range(self.n_symbols), repeat=m - len(word))
            )
        if not self.word_locally_admissible(word):
            return False
        first = self.state_index.get(word[:m])
        last = self.state_index.get(word[-m:])
        if first is None or last is None:
            return False
        return self.backward_ok[first] and self.forward_ok[last]

    def enumerate_words(self, length: int, cap: int = 1 << 22):
        """All globally admissible words of the given length, lexicographic."""
        if self.n_symbols**length > cap:
            raise SizeLimitError(f"word enumeration of length {length} too large")
        out = []
        word = []

        def _extend_ok():
            pos = len(word) - 1
            for rel, vals in self.forbidden:
                a = pos - rel[-1]
                if a >= 0 and all(word[a + o] == v for o, v in zip(rel, vals)):
                    return False
            return True

        def _rec():
            if len(word) == length:
                w = tuple(word)
                if self.globally_admissible(w):
                    out.append(w)
                return
            for a in range(self.n_symbols):
                word.append(a)
                if _extend_ok():
                    _rec()
                word.pop()

        _rec()
        return out

    def count_words(self, length: int) -> int:
        return len(self.enumerate_words(length))

    def weighted_matrix(self, weight_fn) -> np.ndarray:
        """Transition matrix with weight_fn evaluated on each (m+1)-word."""
        size = len(self.states)
        mat = np.zeros((size, size))
        for i, u in enumerate(self.states):
            for j in self.out_edges[i]:
                word = u + (self.states[j][-1],)
                mat[i, j] = weight_fn(word)
        return mat


def _prune(edges) -> list[bool]:
    """States with an infinite path along the given edge direction."""
    alive = [True] * len(edges)
    changed = True
    while changed:
        changed = False
        for i in range(len(edges)):
            if alive[i] and not any(alive[j] for j in edges[i]):
                alive[i] = False
                changed = True
    return alive


def spectral_radius(mat: np.ndarray, tol: float = 1e-12, max_iter: int = 200000) -> float:
    """Perron value of a nonnegative matrix by power iteration.

    Iterates on mat + I (aperiodic, same Perron vector) so periodic graphs
    converge too; on reducible matrices this settles on the dominant
    component's value.
    """
    size = mat.shape[0]
    if size == 0:
        return float("-inf")
    shifted = mat + np.eye(size)
    vec = np.ones(size) / size
    lam = 0.0
    for _ in range(max_iter):
        nxt = shifted @ vec
        norm = nxt.sum()
        if norm == 0.0:
            return 0.0
        nxt /= norm
        if abs(norm - lam) <= tol * max(1.0, abs(norm)):
            return float(norm - 1.0)
        lam = norm
        vec = nxt
    return float(lam - 1.0)


def binary_entropy(p: float) -> float:
    """H(p) in nats with the 0 log 0 = 0 convention."""
    if p < 0.0 or p > 1.0:
        raise ValueError("argument outside [0,1]")
    total = 0.0
    for q in (p, 1.0 - p):
        if q > 0.0:
            total -= q * math.log(q)
    return total
