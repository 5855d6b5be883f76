"""Weyl group elements, Bruhat order, Hecke products and parabolic cosets.

An element is stored as the permutation it induces on the signed root
indices of its :class:`~cascade_lab.rootsys.RootSystem`.  Equality and hashing
use that permutation, so two words for the same element compare equal.

>>> from cascade_lab.rootsys import build_root_system
>>> rs = build_root_system("A2")
>>> s1, s2 = simple_reflection(rs, 0), simple_reflection(rs, 1)
>>> s1 * s2 * s1 == s2 * s1 * s2
True
>>> str(hecke_product(s1, s1))
's1'
"""

from __future__ import annotations

import os
from collections import deque
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .rootsys import Root, RootSystem

__all__ = [
    "WeylElement",
    "CosetContext",
    "GroupTooLarge",
    "identity",
    "simple_reflection",
    "reflection",
    "from_word",
    "apply",
    "multiply",
    "longest_element",
    "bruhat_leq",
    "hecke_product",
    "hecke_times_reflection",
    "element_support",
    "group_order",
    "enumerate_group",
    "weyl_cap",
]

DEFAULT_CAP = 60_000


class GroupTooLarge(RuntimeError):
    """The requested enumeration exceeds the configured |W| cap."""


class WeylElement:
    __slots__ = ("rs", "perm", "_inv", "_word")

    def __init__(self, rs: RootSystem, perm: tuple[int, ...]):
        self.rs = rs
        self.perm = perm
        self._inv: int | None = None
        self._word: tuple[int, ...] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylElement) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __mul__(self, other: WeylElement) -> WeylElement:
        return multiply(self, other)

    def __call__(self, idx: int) -> int:
        return self.perm[idx]

    @property
    def inversions(self) -> int:
        """Bitmask of positive roots sent to negative roots."""
        if self._inv is None:
            N = self.rs.n_pos
            p = self.perm
            self._inv = sum(1 << j for j in range(N) if p[j] >= N)
        return self._inv

    @property
    def length(self) -> int:
        return self.inversions.bit_count()

    def inversion_set(self) -> list[int]:
        return [j for j in range(self.rs.n_pos) if self.inversions >> j & 1]

    def has_descent(self, i: int) -> bool:
        """Right descent at simple root i, i.e. w(beta_i) < 0."""
        return self.perm[self.rs.simple[i]] >= self.rs.n_pos

    def descents(self) -> list[int]:
        return [i for i in range(self.rs.rank) if self.has_descent(i)]

    def inverse(self) -> WeylElement:
        out = [0] * len(self.perm)
        for j, k in enumerate(self.perm):
            out[k] = j
        return WeylElement(self.rs, tuple(out))

    def times_simple(self, i: int) -> WeylElement:
        p = self.perm
        return WeylElement(self.rs, tuple(p[x] for x in _simple_perm(self.rs, i)))

    def reduced_word(self) -> tuple[int, ...]:
        """0-based letters of a reduced word, peeled off as right descents."""
        if self._word is None:
            letters = []
            w = self
            while True:
                d = next((i for i in range(self.rs.rank) if w.has_descent(i)), None)
                if d is None:
                    break
                letters.append(d)
                w = w.times_simple(d)
            self._word = tuple(reversed(letters))
        return self._word

    def __str__(self) -> str:
        word = self.reduced_word()
        return "*".join(f"s{i + 1}" for i in word) if word else "e"

    def __repr__(self) -> str:
        return f"WeylElement({self.rs.spec}, {self})"


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(rs, tuple(range(2 * rs.n_pos)))


def _reflect_perm(rs: RootSystem, a: int) -> tuple[int, ...]:
    alpha = rs.coeffs(a)
    out = []
    for g in range(2 * rs.n_pos):
        c = rs.pair_idx(g, a)
        gamma = rs.coeffs(g)
        out.append(rs.index[tuple(x - c * y for x, y in zip(gamma, alpha))])
    return tuple(out)


@lru_cache(maxsize=None)
def _simple_perm(rs: RootSystem, i: int) -> tuple[int, ...]:
    return _reflect_perm(rs, rs.simple[i])


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return WeylElement(rs, _simple_perm(rs, i))


@lru_cache(maxsize=None)
def _reflection_idx(rs: RootSystem, a: int) -> WeylElement:
    w = WeylElement(rs, _reflect_perm(rs, a))
    w.reduced_word()
    return w


def reflection(rs: RootSystem, alpha: Root | int) -> WeylElement:
    """s_alpha, for a root given by coefficients or by signed index."""
    a = alpha if isinstance(alpha, int) else rs.root_index(alpha)
    if a >= rs.n_pos:
        a -= rs.n_pos
    return _reflection_idx(rs, a)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    w = identity(rs)
    for i in word:
        w = w.times_simple(i)
    return w


def apply(w: WeylElement, alpha: Root) -> Root:
    return w.rs.coeffs(w.perm[w.rs.root_index(alpha)])


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    p = u.perm
    return WeylElement(u.rs, tuple(p[x] for x in v.perm))


def _maximize(w: WeylElement, subset: Iterable[int]) -> WeylElement:
    s = sorted(subset)
    while True:
        i = next((i for i in s if not w.has_descent(i)), None)
        if i is None:
            return w
        w = w.times_simple(i)


def _minimize(w: WeylElement, subset: Iterable[int]) -> WeylElement:
    s = sorted(subset)
    while True:
        i = next((i for i in s if w.has_descent(i)), None)
        if i is None:
            return w
        w = w.times_simple(i)


def longest_element(rs: RootSystem, subset: Iterable[int] | None = None) -> WeylElement:
    """Longest element of the parabolic subgroup generated by ``subset`` (all of Δ if None)."""
    return _maximize(identity(rs), range(rs.rank) if subset is None else subset)


def bruhat_leq(u: WeylElement, v: WeylElement) -> bool:
    """Bruhat order via the lifting property.

    If v s < v then u <= v iff min(u, u s) <= v s.  Each step is forced, so the
    recursion is a single descending path and needs no memo table.
    """
    while True:
        lu, lv = u.length, v.length
        if lu >= lv:
            return lu == lv and u == v
        if lu == 0:
            return True
        i = next(i for i in range(v.rs.rank) if v.has_descent(i))
        v = v.times_simple(i)
        if u.has_descent(i):
            u = u.times_simple(i)


def hecke_times_simple(u: WeylElement, i: int) -> WeylElement:
    return u if u.has_descent(i) else u.times_simple(i)


def hecke_product(u: WeylElement, v: WeylElement) -> WeylElement:
    for i in v.reduced_word():
        if not u.has_descent(i):
            u = u.times_simple(i)
    return u


def hecke_times_reflection(u: WeylElement, a: int) -> WeylElement:
    """u · s_alpha for a positive root index a."""
    return hecke_product(u, _reflection_idx(u.rs, a))


def element_support(w: WeylElement) -> frozenset[int]:
    return frozenset(w.reduced_word())


class CosetContext:
    """Parabolic data: the subset Δ_P, the longest element w_P and R_P^+."""

    def __init__(self, rs: RootSystem, parabolic: Iterable[int] = ()):
        self.rs = rs
        self.parabolic = frozenset(parabolic)
        if not self.parabolic <= frozenset(range(rs.rank)):
            raise ValueError(f"parabolic subset {sorted(self.parabolic)} out of range")
        self.w_P = longest_element(rs, self.parabolic)
        self.rp_mask = sum(1 << j for j in rs.roots_in(self.parabolic))
        assert self.w_P.inversions == self.rp_mask

    def min_rep(self, w: WeylElement) -> WeylElement:
        return _minimize(w, self.parabolic)

    def max_rep(self, w: WeylElement) -> WeylElement:
        return _maximize(w, self.parabolic)

    def coset_length(self, w: WeylElement) -> int:
        return (w.inversions & ~self.rp_mask).bit_count()

    def in_rp(self, j: int) -> bool:
        return bool(self.rp_mask >> j & 1)


_ORDERS = {"E6": 51_840, "E7": 2_903_040, "E8": 696_729_600, "F4": 1_152, "G2": 12}


def group_order(rs: RootSystem) -> int:
    s, n = rs.spec.series, rs.rank
    if s == "A":
        return factorial(n + 1)
    if s in "BC":
        return 2**n * factorial(n)
    if s == "D":
        return 2 ** (n - 1) * factorial(n)
    return _ORDERS[str(rs.spec)]


def weyl_cap() -> int:
    return int(os.environ.get("CASCADE_LAB_WCAP", DEFAULT_CAP))


def enumerate_group(rs: RootSystem, cap: int | None = None) -> Iterator[WeylElement]:
    """Breadth-first enumeration of W, refusing groups larger than the cap."""
    cap = weyl_cap() if cap is None else cap
    if group_order(rs) > cap:
        raise GroupTooLarge(
            f"|W({rs.spec})| = {group_order(rs)} exceeds cap {cap} (set CASCADE_LAB_WCAP)"
        )
    start = identity(rs)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        yield w
        for i in range(rs.rank):
            x = w.times_simple(i)
            if x not in seen:
                seen.add(x)
                queue.append(x)
