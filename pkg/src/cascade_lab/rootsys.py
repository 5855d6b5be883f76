"""Finite root systems of types A through G in Bourbaki numbering.

Roots are integer coefficient vectors over the simple roots. Inside a
:class:`RootSystem` every root also has an integer *index*: positive roots
occupy ``0 .. N-1`` in height-then-lexicographic order and the negative of
root ``j`` is ``j + N``.  Simple roots are referred to by 0-based position;
user-facing output converts to the 1-based Bourbaki labels.

>>> rs = build_root_system(DynkinSpec.parse("A2"))
>>> rs.positive_roots
((0, 1), (1, 0), (1, 1))
>>> pairing(rs, (1, 0), (0, 1))
-1
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "Root",
    "DynkinSpec",
    "RootSystem",
    "UsageError",
    "build_root_system",
    "pairing",
    "support",
    "orthogonal_simple_set",
    "is_strongly_orthogonal",
    "is_locally_high",
    "is_long",
    "connected_components_of_subset",
    "fundamental_weight",
    "totally_disjoint",
]

Root = tuple[int, ...]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


class UsageError(ValueError):
    """Raised for malformed user input such as an unknown Dynkin type."""


@dataclass(frozen=True, order=True)
class DynkinSpec:
    series: str
    rank: int

    def __post_init__(self) -> None:
        ok = _RANK_OK.get(self.series)
        if ok is None or not isinstance(self.rank, int) or not ok(self.rank):
            raise UsageError(f"invalid Dynkin type {self.series}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> DynkinSpec:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
        if not m:
            raise UsageError(f"cannot parse Dynkin type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def _diagram(spec: DynkinSpec) -> tuple[list[Fraction], list[tuple[int, int]]]:
    """Squared lengths of simple roots and the edges of the Dynkin diagram."""
    n, s = spec.rank, spec.series
    chain = [(i, i + 1) for i in range(n - 1)]
    two, one = Fraction(2), Fraction(1)
    if s == "A":
        return [two] * n, chain
    if s == "B":
        return [two] * (n - 1) + [one], chain
    if s == "C":
        return [one] * (n - 1) + [two], chain
    if s == "D":
        return [two] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if s == "E":
        return [two] * n, [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
    if s == "F":
        return [two, two, one, one], chain
    return [Fraction(2, 3), two], chain  # G2: beta1 short


class RootSystem:
    """Immutable table of an irreducible root system.

    Attributes of note: ``cartan[i][j] = (beta_j, beta_i^vee)``, ``gram`` holds
    the exact inner products of simple roots (long roots have squared length 2),
    ``coroots[j]`` expands the coroot of positive root ``j`` over simple coroots.
    """

    def __init__(self, spec: DynkinSpec):
        self.spec = spec
        n = self.rank = spec.rank
        lengths, edges = _diagram(spec)
        gram = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = lengths[i]
        for i, j in edges:
            gram[i][j] = gram[j][i] = -max(lengths[i], lengths[j]) / 2
        cartan = []
        for i in range(n):
            row = []
            for j in range(n):
                c = 2 * gram[i][j] / gram[i][i]
                assert c.denominator == 1
                row.append(int(c))
            cartan.append(tuple(row))
        self.gram: tuple[tuple[Fraction, ...], ...] = tuple(tuple(r) for r in gram)
        self.cartan: tuple[tuple[int, ...], ...] = tuple(cartan)
        self.adjacent: tuple[frozenset[int], ...] = tuple(
            frozenset(j for j in range(n) if j != i and cartan[i][j] != 0) for i in range(n)
        )

        pos = self._closure()
        pos.sort(key=lambda c: (sum(c), c))
        self.positive_roots: tuple[Root, ...] = tuple(pos)
        N = self.n_pos = len(pos)
        self.index: dict[Root, int] = {}
        for j, c in enumerate(pos):
            self.index[c] = j
            self.index[tuple(-x for x in c)] = j + N
        self.simple: tuple[int, ...] = tuple(
            self.index[tuple(int(k == i) for k in range(n))] for i in range(n)
        )
        self.sqlen: tuple[Fraction, ...] = tuple(self.inner(c, c) for c in pos)
        self.max_sqlen = max(self.sqlen)
        self.coroots: tuple[Root, ...] = tuple(self._coroot(c) for c in pos)
        self.supports: tuple[frozenset[int], ...] = tuple(
            frozenset(i for i, x in enumerate(c) if x) for c in pos
        )
        # pair[j][k] = (root_j, root_k^vee) for positive j, k
        self.pair: tuple[tuple[int, ...], ...] = tuple(
            tuple(sum(a * b for a, b in zip(self._simple_pairings(c), self.coroots[k]))
                  for k in range(N))
            for c in pos
        )
        # bitmask of positive roots strictly above j in root order
        self.above: tuple[int, ...] = tuple(
            sum(1 << k for k in range(N) if k != j and _dominates(pos[k], pos[j]))
            for j in range(N)
        )
        self.highest_root: Root = pos[-1]

    def _closure(self) -> list[Root]:
        n = self.rank
        units = [tuple(int(k == i) for k in range(n)) for i in range(n)]
        found = set(units)
        layer = list(units)
        while layer:
            nxt = []
            for a in layer:
                for i in range(n):
                    p, v = 0, _sub(a, units[i])
                    while v in found:
                        p, v = p + 1, _sub(v, units[i])
                    q = p - sum(a[k] * self.cartan[i][k] for k in range(n))
                    b = _add(a, units[i])
                    if q > 0 and b not in found:
                        found.add(b)
                        nxt.append(b)
            layer = nxt
        return list(found)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        """Exact inner product of two vectors in simple-root coordinates."""
        n = self.rank
        return sum(
            (Fraction(x[i]) * y[j] * self.gram[i][j]
             for i in range(n) if x[i] for j in range(n) if y[j]),
            Fraction(0),
        )

    def _simple_pairings(self, x: Sequence) -> tuple:
        # (x, beta_i^vee) for every simple i
        return tuple(sum(x[k] * self.cartan[i][k] for k in range(self.rank))
                     for i in range(self.rank))

    def _coroot(self, c: Root) -> Root:
        out = []
        for i, x in enumerate(c):
            v = Fraction(x) * self.gram[i][i] / self.inner(c, c)
            assert v.denominator == 1
            out.append(int(v))
        return tuple(out)

    # index helpers -------------------------------------------------------

    def coeffs(self, idx: int) -> Root:
        N = self.n_pos
        if idx < N:
            return self.positive_roots[idx]
        return tuple(-x for x in self.positive_roots[idx - N])

    def root_index(self, coeffs: Iterable[int]) -> int:
        key = tuple(coeffs)
        if key not in self.index:
            raise ValueError(f"{key} is not a root of {self.spec}")
        return self.index[key]

    def find(self, coeffs: Iterable[int]) -> int | None:
        return self.index.get(tuple(coeffs))

    def neg(self, idx: int) -> int:
        N = self.n_pos
        return idx + N if idx < N else idx - N

    def pair_idx(self, g: int, a: int) -> int:
        """(root_g, root_a^vee) for signed indices."""
        N = self.n_pos
        sign = 1
        if g >= N:
            g, sign = g - N, -sign
        if a >= N:
            a, sign = a - N, -sign
        return sign * self.pair[g][a]

    def leq(self, j: int, k: int) -> bool:
        """Root order on positive indices: root_k - root_j is a sum of simple roots."""
        return j == k or bool(self.above[j] >> k & 1)

    def roots_in(self, subset: Iterable[int]) -> list[int]:
        """Positive roots supported inside ``subset``."""
        s = frozenset(subset)
        return [j for j in range(self.n_pos) if self.supports[j] <= s]

    def __repr__(self) -> str:
        return f"RootSystem({self.spec})"


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _dominates(big: Root, small: Root) -> bool:
    return all(x >= y for x, y in zip(big, small))


@lru_cache(maxsize=None)
def build_root_system(spec: DynkinSpec | str) -> RootSystem:
    """Build (and memoize) the root system of ``spec``."""
    if isinstance(spec, str):
        spec = DynkinSpec.parse(spec)
    return RootSystem(spec)


def pairing(rs: RootSystem, x: Sequence, alpha: Root) -> int | Fraction:
    """(x, alpha^vee) for a rational vector ``x``; an int whenever integral."""
    a = tuple(alpha)
    rs.root_index(a)
    v = 2 * rs.inner(x, a) / rs.inner(a, a)
    return int(v) if v.denominator == 1 else v


def support(alpha: Root) -> frozenset[int]:
    if not any(alpha) or min(alpha) < 0:
        raise ValueError("support is defined for positive roots only")
    return frozenset(i for i, x in enumerate(alpha) if x)


def orthogonal_simple_set(rs: RootSystem, alpha: Root) -> frozenset[int]:
    units = (tuple(int(k == i) for k in range(rs.rank)) for i in range(rs.rank))
    return frozenset(i for i, u in enumerate(units) if rs.inner(alpha, u) == 0)


def is_strongly_orthogonal(rs: RootSystem, alpha: Root, beta: Root) -> bool:
    s, d = _add(alpha, beta), _sub(alpha, beta)
    return any(s) and any(d) and rs.find(s) is None and rs.find(d) is None


def is_locally_high(rs: RootSystem, phi: Root) -> bool:
    sub = rs.roots_in(support(phi))
    return max(sub, key=lambda j: sum(rs.positive_roots[j])) == rs.root_index(phi)


def is_long(rs: RootSystem, alpha: Root) -> bool:
    # the ambient system is irreducible, so its maximum is the component maximum
    return rs.inner(alpha, alpha) == rs.max_sqlen


def connected_components_of_subset(rs: RootSystem, s: Iterable[int]) -> list[frozenset[int]]:
    left = set(s)
    comps = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            for j in rs.adjacent[stack.pop()]:
                if j in left and j not in comp:
                    comp.add(j)
                    stack.append(j)
        left -= comp
        comps.append(frozenset(comp))
    return comps


def totally_disjoint(rs: RootSystem, s: Iterable[int], t: Iterable[int]) -> bool:
    """Two sets of simple roots are totally disjoint when they are disjoint and
    no node of one is adjacent to a node of the other."""
    s, t = frozenset(s), frozenset(t)
    return not (s & t) and not any(rs.adjacent[i] & t for i in s)


def fundamental_weight(rs: RootSystem, i: int) -> tuple[Fraction, ...]:
    """omega_i in simple-root coordinates, solving cartan @ c = e_i exactly."""
    n = rs.rank
    m = [[Fraction(rs.cartan[r][c]) for c in range(n)] + [Fraction(int(r == i))]
         for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        m[col] = [v / m[col][col] for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[r][n] for r in range(n))
