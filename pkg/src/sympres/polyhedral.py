"""Exact rational cones: LP-based membership, relative interior and chambers.

All linear programs are solved by a dense tableau simplex over
:class:`fractions.Fraction` with Bland's anti-cycling rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateWall
from .exact import nullspace, rank, row_reduce

Vector = tuple


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


# ---------------------------------------------------------------------------
# simplex


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int]):
        self.rows = rows          # each row: coefficients ..., rhs
        self.basis = basis

    def pivot(self, r: int, c: int):
        row = self.rows[r]
        inv = 1 / row[c]
        row = [x * inv if x else x for x in row]
        self.rows[r] = row
        support = [k for k, y in enumerate(row) if y]
        for i, other in enumerate(self.rows):
            if i != r and other[c]:
                f = other[c]
                other = list(other)
                for k in support:
                    other[k] -= f * row[k]
                self.rows[i] = other
        self.basis[r] = c

    def optimize(self, cost: list[Fraction], allowed: Sequence[bool]) -> None:
        """Maximize cost . x over the current feasible basis (Bland's rule)."""
        n = len(cost)
        rc = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for c in range(n):
                    if row[c]:
                        rc[c] -= cb * row[c]
        while True:
            entering = next((c for c in range(n) if allowed[c] and rc[c] > 0 and c not in self.basis), None)
            if entering is None:
                return
            leave = None
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave is None:
                raise ArithmeticError("unbounded linear program")
            self.pivot(leave, entering)
            f = rc[entering]
            row = self.rows[leave]
            for c in range(n):
                if row[c]:
                    rc[c] -= f * row[c]

    def solution(self, n: int) -> list[Fraction]:
        x = [Fraction(0)] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rows[i][-1]
        return x


def solve_lp(a_eq: Sequence[Sequence], b_eq: Sequence, cost: Sequence | None = None):
    """Solve max cost.x subject to A x = b, x >= 0.

    Returns ``(status, x)`` with status ``"infeasible"``, ``"optimal"`` or
    ``"unbounded"``; ``x`` is an optimal (or, without cost, feasible) point.
    """
    m = len(a_eq)
    n = len(a_eq[0]) if m else len(cost or [])
    rows = []
    for i in range(m):
        r = [_fr(x) for x in a_eq[i]]
        rhs = _fr(b_eq[i])
        if rhs < 0:
            r = [-x for x in r]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        rows.append(r + art + [rhs])
    tab = _Tableau(rows, [n + i for i in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(-1)] * m
    tab.optimize(phase1, [True] * (n + m))
    if any(tab.rows[i][-1] != 0 for i, b in enumerate(tab.basis) if b >= n):
        return "infeasible", None
    # drive artificial variables out of the basis
    i = 0
    while i < len(tab.rows):
        b = tab.basis[i]
        if b >= n:
            col = next((c for c in range(n) if tab.rows[i][c] != 0), None)
            if col is None:
                del tab.rows[i]
                del tab.basis[i]
                continue
            tab.pivot(i, col)
        i += 1
    tab.rows = [r[:n] + [r[-1]] for r in tab.rows]
    if cost is None:
        return "optimal", tab.solution(n)
    try:
        tab.optimize([_fr(c) for c in cost], [True] * n)
    except ArithmeticError:
        return "unbounded", None
    return "optimal", tab.solution(n)


def feasible_inequalities(a_ub: Sequence[Sequence], b_ub: Sequence, nonneg: bool = True):
    """Find x (x >= 0 if ``nonneg``) with A x >= b, or None."""
    m = len(a_ub)
    n = len(a_ub[0]) if m else 0
    if not nonneg:
        # x = p - q
        a_ub = [list(r) + [-v for v in r] for r in a_ub]
    width = len(a_ub[0]) if m else 0
    rows = []
    for i, r in enumerate(a_ub):
        slack = [Fraction(0)] * m
        slack[i] = Fraction(-1)
        rows.append([_fr(x) for x in r] + slack)
    status, x = solve_lp(rows, b_ub)
    if status != "optimal":
        return None
    x = x[:width]
    if not nonneg:
        x = [p - q for p, q in zip(x[:n], x[n:])]
    return x


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    generators: tuple

    def __init__(self, ambient_dim: int, generators: Sequence[Sequence] = ()):
        gens = []
        for g in generators:
            g = tuple(_fr(x) for x in g)
            if len(g) != ambient_dim:
                raise ValueError("generator dimension mismatch")
            if any(g):
                gens.append(g)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "generators", tuple(gens))

    def dimension(self) -> int:
        return rank([list(g) for g in self.generators]) if self.generators else 0


def image_cone(face, columns: Sequence[Sequence[int]], ambient_dim: int | None = None) -> Cone:
    """Cone generated by the columns indexed by ``face``."""
    dim = ambient_dim if ambient_dim is not None else len(columns[0])
    return Cone(dim, [columns[v] for v in sorted(face)])


def contains(cone: Cone, u: Sequence) -> bool:
    """Is u a non-negative combination of the generators?"""
    return combination(cone, u) is not None


def combination(cone: Cone, u: Sequence):
    """Non-negative coefficients expressing u, or None (exact LP)."""
    u = [_fr(x) for x in u]
    if len(u) != cone.ambient_dim:
        raise ValueError("dimension mismatch")
    if not cone.generators:
        return [] if not any(u) else None
    a = [[g[r] for g in cone.generators] for r in range(cone.ambient_dim)]
    status, x = solve_lp(a, u)
    return x if status == "optimal" else None


def farkas_certificate(cone: Cone, u: Sequence):
    """A vector y with y.g >= 0 for all generators and y.u < 0, when u is outside."""
    if contains(cone, u):
        return None
    d = cone.ambient_dim
    # y free: y.g >= 0, -y.u >= 1
    rows = [list(g) for g in cone.generators] + [[-_fr(x) for x in u]]
    rhs = [0] * len(cone.generators) + [1]
    return feasible_inequalities(rows, rhs, nonneg=False)


def contains_relative_interior(cone: Cone, u: Sequence) -> bool:
    """Is u a combination of all generators with strictly positive coefficients?"""
    return strict_combination(cone, u) is not None


def strict_combination(cone: Cone, u: Sequence):
    u = [_fr(x) for x in u]
    gens = cone.generators
    if not gens:
        return [] if not any(u) else None
    d = cone.ambient_dim
    k = len(gens)
    # variables: mu_1..mu_k >= 0, s >= 0, slack >= 0 ; lambda = mu + s
    # sum_g (mu_g + s) g = u ; s + slack = 1 ; maximize s
    rows = []
    for r in range(d):
        total = sum((g[r] for g in gens), Fraction(0))
        rows.append([g[r] for g in gens] + [total, Fraction(0)])
    rows.append([Fraction(0)] * k + [Fraction(1), Fraction(1)])
    status, x = solve_lp(rows, u + [Fraction(1)], [0] * k + [1, 0])
    if status != "optimal" or x[k] <= 0:
        return None
    s = x[k]
    return [x[i] + s for i in range(k)]


def fourier_motzkin_contains(cone: Cone, u: Sequence) -> bool:
    """Membership by Fourier-Motzkin elimination, independent of the simplex code.

    Solutions of sum lambda_j g_j = u are written p + N z; the system p + N z >= 0
    is then projected onto z = () one coordinate at a time, with Chernikov's
    history rule discarding redundant combinations.
    """
    u = [_fr(x) for x in u]
    gens = cone.generators
    k = len(gens)
    if k == 0:
        return not any(u)
    aug = [[g[r] for g in gens] + [u[r]] for r in range(cone.ambient_dim)]
    red, piv = row_reduce(aug)
    if k in piv:
        return False
    p = [Fraction(0)] * k
    for r, c in enumerate(piv):
        p[c] = red[r][k]
    basis = nullspace([row[:k] for row in red if any(row[:k])], k)
    # rows: (coefficients on z, constant, history); meaning coeffs.z + constant >= 0
    rows = [(tuple(b[j] for b in basis), p[j], frozenset([j])) for j in range(k)]
    for t in range(len(basis)):
        pos = [q for q in rows if q[0][t] > 0]
        neg = [q for q in rows if q[0][t] < 0]
        new = [q for q in rows if q[0][t] == 0]
        for pa, pc, ph in pos:
            for na, nc, nh in neg:
                hist = ph | nh
                if len(hist) > t + 2:
                    continue
                s, r = -na[t], pa[t]
                new.append((tuple(s * x + r * y for x, y in zip(pa, na)), s * pc + r * nc, hist))
        rows = new
    return all(c >= 0 for _, c, _ in rows)


# ---------------------------------------------------------------------------
# hyperplane arrangements


@dataclass(frozen=True)
class Hyperplane:
    """The hyperplane {x : pair(normal, x) = 0}; ``gram`` None means the dot product."""

    normal: tuple
    gram: tuple | None = None
    label: str = ""

    def functional(self) -> tuple:
        """Coefficients c with pair(normal, x) = c . x."""
        cached = self.__dict__.get("_functional")
        if cached is None:
            cached = self._compute_functional()
            object.__setattr__(self, "_functional", cached)
        return cached

    def _compute_functional(self) -> tuple:
        n = [_fr(x) for x in self.normal]
        if self.gram is None:
            return tuple(n)
        d = len(n)
        return tuple(sum((n[i] * _fr(self.gram[i][j]) for i in range(d)), Fraction(0)) for j in range(d))

    def value(self, x) -> Fraction:
        return dot(self.functional(), x)


@dataclass
class Chamber:
    signs: tuple
    witness: tuple
    labels: tuple = field(default=())


def _strict_point(ambient: Cone, constraints: list[tuple[tuple, int]]):
    """Point in the interior of ``ambient`` with sign(c.x) = s for each (c, s), or None."""
    gens = ambient.generators
    k = len(gens)
    # lambda_j >= 1 for all j, written lambda = 1 + mu with mu >= 0
    rows, rhs = [], []
    for c, s in constraints:
        row = [s * dot(c, g) for g in gens]
        rows.append(row)
        rhs.append(1 - sum(row, Fraction(0)))
    if rows:
        mu = feasible_inequalities(rows, rhs)
        if mu is None:
            return None
    else:
        mu = [Fraction(0)] * k
    lam = [1 + m for m in mu]
    return tuple(sum((lam[j] * gens[j][i] for j in range(k)), Fraction(0)) for i in range(ambient.ambient_dim))


def enumerate_chambers(ambient: Cone, walls: Sequence[Hyperplane]) -> list[Chamber]:
    """Chambers of the arrangement inside a full-dimensional cone, by incremental splitting."""
    if ambient.dimension() != ambient.ambient_dim:
        raise ValueError("ambient cone must be full-dimensional")
    funcs = [w.functional() for w in walls]
    for w, c in zip(walls, funcs):
        if all(dot(c, g) == 0 for g in ambient.generators):
            raise DegenerateWall(f"wall {w.label or w.normal} contains the ambient cone")
    start = _strict_point(ambient, [])
    chambers = [((), start)]
    for idx, c in enumerate(funcs):
        nxt = []
        for signs, witness in chambers:
            base = [(funcs[i], s) for i, s in enumerate(signs)]
            side = dot(c, witness)
            current = 1 if side > 0 else -1 if side < 0 else 0
            for s in (1, -1):
                if s == current:
                    nxt.append((signs + (s,), witness))
                    continue
                p = _strict_point(ambient, base + [(c, s)])
                if p is not None:
                    nxt.append((signs + (s,), p))
        chambers = nxt
    labels = tuple(w.label for w in walls)
    return [Chamber(signs, witness, labels) for signs, witness in chambers]


def chamber_of(point, walls: Sequence[Hyperplane]) -> tuple:
    out = []
    for w in walls:
        v = w.value(point)
        if v == 0:
            raise ValueError("point lies on a wall")
        out.append(1 if v > 0 else -1)
    return tuple(out)


# ---------------------------------------------------------------------------
# helpers for tests and demos


def random_cone(rng: random.Random, max_dim: int = 4, max_gens: int = 6, bound: int = 5) -> Cone:
    d = rng.randint(1, max_dim)
    k = rng.randint(0, max_gens)
    gens = []
    for _ in range(k):
        g = [rng.randint(-bound, bound) for _ in range(d)]
        if any(g):
            gens.append(g)
    return Cone(d, gens)


def orthant_faces(n: int):
    """All subsets of range(n) as sorted tuples, ordered by bitmask."""
    for mask in range(1 << n):
        yield tuple(v for v in range(n) if mask >> v & 1)
