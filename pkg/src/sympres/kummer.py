"""2-torsion combinatorics of Q8 acting on E^2 and of the reflection group on E^4.

Points of order dividing 2 on E = C/Z[i] form the ring Z[i]/2, so every
statement here is a statement about modules (Z[i]/2)^r and matrices
reduced mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import NotQ8Rep
from .exact import (GaussInt, GaussRational, I, ONE_PLUS_I, Z2i, kernel_over_Z2i,
                    z2i_matvec, z2i_vectors)
from .group import T, generate_group, gmat, mat_identity, mat_inv, mat_mul, mat_neg, mat_sub

H = Fraction(1, 2)

A_REP = (
    gmat([[I, 0], [0, -I]]),
    gmat([[0, 1], [-1, 0]]),
    gmat([[0, I], [I, 0]]),
)

B_REP = (
    gmat([[I, 0], [I + 1, -I]]),
    gmat([[-I, I - 1], [0, I]]),
    gmat([[1, -1 - I], [1 - I, -1]]),
)

T_PRIME = (
    gmat([[1, 0, 0, 0], [0, -1, 0, 0], [0, -1 + I, 1, 0], [1 - I, 0, 0, -1]]),
    gmat([[I, -1 - I, 0, 1 - I], [0, -I, -1 + I, 0], [0, -1 - I, I, 0], [1 + I, 0, -1 - I, -I]]),
    gmat([[1, 0, 0, -1 - I], [0, -1, 1 + I, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
    gmat([[I, 0, 0, 1 - I], [1 - I, -I, -1 + I, 0], [0, -1 - I, I, 1 - I], [1 + I, 0, 0, -I]]),
    gmat([[1, -1 + I, 0, -1 - I], [-1 - I, -1, 1 + I, 0], [0, -1 + I, 1, -1 - I], [1 - I, 0, -1 + I, -1]]),
)

W = gmat([
    [1, H - H * I, -1, 0],
    [1, -H + H * I, 0, -1 - I],
    [0, -H - H * I, I, 0],
    [0, H + H * I, 0, 0],
])


def reduce_mod2(m) -> list[list[Z2i]]:
    return [[Z2i.from_value(x) for x in r] for r in m]


def module(r: int) -> list[tuple]:
    """All elements of M^r = (Z[i]/2)^r."""
    return list(z2i_vectors(r))


def special_submodule(r: int) -> set[tuple]:
    """M_0^r = (1+i) M^r."""
    return {tuple(ONE_PLUS_I * x for x in v) for v in z2i_vectors(r)}


def fixed_points_2torsion(g) -> set[tuple]:
    """Points of M^r fixed by g reduced mod 2."""
    n = len(g)
    diff = mat_sub(g, mat_identity(n))
    return set(kernel_over_Z2i(diff))


def _acts(g, v) -> tuple:
    return z2i_matvec(reduce_mod2(g), v)


# ---------------------------------------------------------------------------
# Q8 on E^2


def check_q8_relations(rep) -> None:
    x, y, z = rep
    minus = mat_neg(mat_identity(len(x)))
    sq = [mat_mul(a, a) for a in rep]
    if any(s != minus for s in sq):
        raise NotQ8Rep("generators do not square to -id")
    xy = mat_mul(x, y)
    if xy != z and xy != mat_neg(z):
        raise NotQ8Rep("product of the first two generators is not +-the third")


@dataclass(frozen=True)
class IsotropyProfile:
    n8: int
    n4: int
    n2: int

    def as_tuple(self) -> tuple:
        return (self.n8, self.n4, self.n2)

    def satisfies_equations(self) -> bool:
        return (self.n8 + 2 * self.n4 + 4 * self.n2 == 16
                and 4 * self.n8 + 3 * self.n4 + self.n2 == 19)


def q8_profile(rep) -> IsotropyProfile:
    """Orbit counts of 2-torsion points of E^2 by isotropy Q8, Z4, Z2."""
    check_q8_relations(rep)
    group = generate_group(rep, dim=2)
    if group.order != 8:
        raise NotQ8Rep(f"generated group has order {group.order}")
    points = module(2)
    by_size = {8: 0, 4: 0, 2: 0}
    for p in points:
        stab = sum(1 for g in group.elements if _acts(g, p) == p)
        by_size[stab] += 1
    # orbit of a point with stabilizer S has 8/|S| elements
    return IsotropyProfile(by_size[8], by_size[4] // 2, by_size[2] // 4)


def q8_orbit_census(rep) -> dict:
    """Explicit orbits of the group on M^2, grouped by stabilizer order."""
    group = generate_group(rep, dim=2)
    seen = set()
    census = {8: 0, 4: 0, 2: 0}
    for p in module(2):
        if p in seen:
            continue
        orbit = {_acts(g, p) for g in group.elements}
        seen |= orbit
        census[8 // len(orbit)] += 1
    return census


def profile_solutions() -> list[tuple]:
    """Non-negative integer solutions with n8 > 0 of the two counting equations."""
    out = []
    for n8 in range(1, 17):
        for n4 in range(0, 9):
            rest = 16 - n8 - 2 * n4
            if rest < 0 or rest % 4:
                continue
            n2 = rest // 4
            if 4 * n8 + 3 * n4 + n2 == 19:
                out.append((n8, n4, n2))
    return out


# ---------------------------------------------------------------------------
# the reflection group on E^4


def verify_conjugation(w=W, reflections=T, conjugates=T_PRIME) -> bool:
    winv = mat_inv(w)
    return all(mat_mul(mat_mul(winv, t), w) == tp for t, tp in zip(reflections, conjugates))


def _span(gens: list[tuple], r: int) -> set[tuple]:
    """Z[i]/2-submodule generated by the vectors."""
    out = {tuple(Z2i() for _ in range(r))}
    for g in gens:
        out = {tuple(a + c * b for a, b in zip(v, g)) for v in out for c in Z2i.elements()}
    return out


def _residue_independent(vectors: list[tuple]) -> bool:
    """Linear independence of the images in M/(1+i)M = F_2^r (residue of a + b i is a + b)."""
    rows = [[(x.a ^ x.b) for x in v] for v in vectors]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k][c]:
                rows[k] = [a ^ b for a, b in zip(rows[k], rows[rank])]
        rank += 1
    return rank == len(vectors)


def complement_module(kernel: set[tuple], r: int = 4) -> set[tuple]:
    """A free rank-2 submodule K with kernel = M_0 + K (first suitable pair in enumeration order)."""
    special = special_submodule(r)
    candidates = sorted(kernel - special, key=lambda v: [(x.a, x.b) for x in v])
    for a in candidates:
        for b in candidates:
            if _residue_independent([a, b]):
                k = _span([a, b], r)
                if len(k) == 16 and {tuple(x + y for x, y in zip(p, q)) for p in k for q in special} == kernel:
                    return k
    raise ValueError("no free rank 2 complement found")


@dataclass
class PartitionReport:
    special_count: int
    special_fixed_by_all: bool
    exactly_one: bool
    per_reflection: list
    kernel_sizes: list
    complements_free: bool
    pairwise_trivial_intersection: bool
    pairwise_sum_is_everything: bool

    @property
    def total_identity(self) -> bool:
        return self.special_count + sum(self.per_reflection) == 4 ** 4

    @property
    def ok(self) -> bool:
        return (self.special_count == 16 and self.special_fixed_by_all and self.exactly_one
                and all(c == 48 for c in self.per_reflection) and self.total_identity
                and self.complements_free and self.pairwise_trivial_intersection
                and self.pairwise_sum_is_everything)


def isotropy_partition_M4(reflections=T_PRIME) -> PartitionReport:
    special = special_submodule(4)
    kernels = [fixed_points_2torsion(t) for t in reflections]
    elements = module(4)
    special_ok = all(v in k for v in special for k in kernels)
    exactly_one = True
    per = [0] * len(reflections)
    for v in elements:
        if v in special:
            continue
        hits = [i for i, k in enumerate(kernels) if v in k]
        if len(hits) != 1:
            exactly_one = False
        for i in hits:
            per[i] += 1
    comps = [complement_module(k) for k in kernels]
    zero = tuple(Z2i() for _ in range(4))
    trivial = all(comps[i] & comps[j] == {zero}
                  for i in range(5) for j in range(i + 1, 5))
    full = all(len({tuple(x + y for x, y in zip(p, q)) for p in comps[i] for q in comps[j]}) == 256
               for i in range(5) for j in range(i + 1, 5))
    return PartitionReport(
        special_count=len(special),
        special_fixed_by_all=special_ok,
        exactly_one=exactly_one,
        per_reflection=per,
        kernel_sizes=[len(k) for k in kernels],
        complements_free=all(len(c) == 16 for c in comps),
        pairwise_trivial_intersection=trivial,
        pairwise_sum_is_everything=full,
    )


def group_order_mod2(reflections=T_PRIME) -> int:
    return generate_group(reflections).order


@dataclass
class KummerCounts:
    special_points: int
    a1_orbit_points: int
    components: int
    max_special_per_component: int
    betti: dict


def kummer_counts(partition: PartitionReport | None = None) -> KummerCounts:
    partition = partition or isotropy_partition_M4()
    if not partition.ok:
        raise ValueError("isotropy partition of M^4 failed; counts are not meaningful")
    special = partition.special_count
    rest = 4 ** 4 - special
    # each non-special point has isotropy <+-T_i>, a normal subgroup of index 8 in the order-32 group
    orbit_points = rest // 8
    # a component's normalization is a quotient of Fix(T_i) by Q8, with n8 special points;
    # n8 is at most the largest admissible solution of the counting equations
    max_n8 = max(s[0] for s in profile_solutions())
    b_profile = q8_profile(B_REP)
    if b_profile.n8 != max_n8:
        raise ValueError("the four-point profile is not realized")
    components = special * len(T_PRIME) // max_n8
    betti = {"b2": 23, "b4": 276, "b6": 23, "source": "cited, gated on the component count"}
    return KummerCounts(special, orbit_points, components, max_n8, betti)
