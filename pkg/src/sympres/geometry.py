"""Intersection form on W = span(e_0..e_4) and the chamber censuses on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .polyhedral import Chamber, Cone, Hyperplane, chamber_of, enumerate_chambers

PAIRS = [(i, j) for i, j in combinations(range(5), 2)]
GRAM = tuple(tuple(Fraction(-3) if i == j else Fraction(1) for j in range(5)) for i in range(5))


def vec(*xs) -> tuple:
    return tuple(Fraction(x) for x in xs)


def e(i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(5))


def add(*vs) -> tuple:
    return tuple(sum(c, Fraction(0)) for c in zip(*vs))


def scale(v, c) -> tuple:
    return tuple(x * c for x in v)


KAPPA = add(*(e(i) for i in range(5)))


def f(i: int, j: int) -> tuple:
    return scale(add(e(i), e(j)), Fraction(1, 2))


def c(i: int) -> tuple:
    """(kappa - e_i)/2, also written beta_i."""
    return scale(add(KAPPA, scale(e(i), -1)), Fraction(1, 2))


def alpha(i: int) -> tuple:
    """(kappa + e_i)/2."""
    return scale(add(KAPPA, e(i)), Fraction(1, 2))


beta = c


def pair(a: Sequence, b: Sequence, gram=GRAM) -> Fraction:
    return sum((Fraction(a[i]) * gram[i][j] * Fraction(b[j]) for i in range(5) for j in range(5)), Fraction(0))


def in_lattice(v: Sequence) -> bool:
    """Is v = sum a_i e_i/2 with integral a_i of even sum?"""
    a = [Fraction(x) * 2 for x in v]
    return all(x.denominator == 1 for x in a) and sum(a) % 2 == 0


def signature(gram=GRAM) -> tuple[int, int]:
    """(positive, negative) inertia via an exact LDL^T sweep."""
    n = len(gram)
    a = [[Fraction(x) for x in r] for r in gram]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is None:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                for r in range(n):
                    a[k][r] += a[j][r]
                for r in range(n):
                    a[r][k] += a[r][j]
            else:
                a[k], a[j] = a[j], a[k]
                for r in a:
                    r[k], r[j] = r[j], r[k]
        p = a[k][k]
        if p == 0:
            continue
        pos += p > 0
        neg += p < 0
        for i in range(k + 1, n):
            fct = a[i][k] / p
            for j in range(k, n):
                a[i][j] -= fct * a[k][j]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
            a[i][k] = Fraction(0)
    return pos, neg


# ---------------------------------------------------------------------------
# checklist


def verify_p24_geometry() -> dict[str, bool]:
    checks: dict[str, bool] = {}
    checks["kappa^2 = 5"] = pair(KAPPA, KAPPA) == 5
    checks["f_ij^2 = -1"] = all(pair(f(*p), f(*p)) == -1 for p in PAIRS)
    checks["kappa.e_i = 1"] = all(pair(KAPPA, e(i)) == 1 for i in range(5))
    checks["kappa.f_ij = 1"] = all(pair(KAPPA, f(*p)) == 1 for p in PAIRS)
    checks["e_i.c_i = 2"] = all(pair(e(i), c(i)) == 2 for i in range(5))
    checks["e_i.c_j = 0"] = all(pair(e(i), c(j)) == 0 for i in range(5) for j in range(5) if i != j)
    checks["F_ij.F_pq = |union| - 3"] = all(
        pair(f(*p), f(*q)) == len(set(p) | set(q)) - 3 for p in PAIRS for q in PAIRS)
    checks["alpha facets: six f_pq with i not in pq are orthogonal to c_i"] = all(
        sorted(p for p in PAIRS if pair(f(*p), c(i)) == 0) == [p for p in PAIRS if i not in p]
        for i in range(5))
    checks["beta facets: four f_pq with i in pq are orthogonal to (kappa+e_i)/2"] = all(
        sorted(p for p in PAIRS if pair(f(*p), alpha(i)) == 0) == [p for p in PAIRS if i in p]
        for i in range(5))
    checks["Eff on the positive side of its facets"] = all(
        pair(f(*p), c(i)) >= 0 and pair(f(*p), alpha(i)) >= 0 for p in PAIRS for i in range(5))
    checks["nef generators kappa +- e_i pair non-negatively with all f_pq"] = all(
        pair(add(KAPPA, scale(e(i), s)), f(*p)) >= 0 for i in range(5) for s in (1, -1) for p in PAIRS)
    checks["lattice contains f_ij and kappa"] = all(in_lattice(f(*p)) for p in PAIRS) and in_lattice(KAPPA)
    checks["e_i/2 not in lattice"] = not any(in_lattice(scale(e(i), Fraction(1, 2))) for i in range(5))
    checks["signature (1,4)"] = signature() == (1, 4)
    return checks


# ---------------------------------------------------------------------------
# chamber censuses


def f_walls() -> list[Hyperplane]:
    return [Hyperplane(f(*p), GRAM, f"f{p[0]}{p[1]}") for p in PAIRS]


def outer_walls() -> list[Hyperplane]:
    """Walls orthogonal to (kappa + e_i)/2, the hyperplanes of the five contractions to P^2."""
    return [Hyperplane(alpha(i), GRAM, f"b{i}") for i in range(5)]


def c_walls() -> list[Hyperplane]:
    """Walls orthogonal to (kappa - e_i)/2; these are the facets {x_i = 0} of cone(e_0..e_4)."""
    return [Hyperplane(c(i), GRAM, f"c{i}") for i in range(5)]


def mov_cone() -> Cone:
    return Cone(5, [e(i) for i in range(5)])


def eff_cone() -> Cone:
    return Cone(5, [f(*p) for p in PAIRS])


def permute(v: Sequence, perm: Sequence[int]) -> tuple:
    """Apply the index permutation e_i -> e_perm[i]."""
    out = [Fraction(0)] * 5
    for i, x in enumerate(v):
        out[perm[i]] = x
    return tuple(out)


def chamber_orbits(chambers: list[Chamber], walls: list[Hyperplane]) -> list[list[int]]:
    """Group chambers into S5-orbits; chambers are identified by sign vector."""
    index = {ch.signs: k for k, ch in enumerate(chambers)}
    seen = set()
    orbits = []
    perms = list(permutations(range(5)))
    for k, ch in enumerate(chambers):
        if k in seen:
            continue
        orbit = set()
        for perm in perms:
            image = chamber_of(permute(ch.witness, perm), walls)
            if image not in index:
                raise ValueError("permuted chamber is not a chamber; arrangement not symmetric")
            orbit.add(index[image])
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def negative_f_count(ch: Chamber) -> int:
    """Number of f_ij pairing negatively with the chamber."""
    return sum(1 for s, lab in zip(ch.signs, ch.labels) if lab.startswith("f") and s < 0)


def _adjacent(a: Chamber, b: Chamber) -> bool:
    return sum(1 for x, y in zip(a.signs, b.signs) if x != y) == 1


@dataclass
class MovCensus:
    total: int
    orbit_sizes: list
    chambers: list
    orbits: list
    central: int
    families: dict


MOV_FAMILY_NAMES = {
    (1, 0): "central",
    (10, 1): "P2_3 flop",
    (30, 2): "P2_2 flop",
    (10, 3): "P1xP1 flop",
    (20, 3): "P2_1 flop",
    (5, 4): "P2 flop",
    (5, 5): "outer",
}


def mov_chamber_census(order: Sequence[int] | None = None) -> MovCensus:
    walls = f_walls() + outer_walls()
    if order is not None:
        walls = [walls[k] for k in order]
    chambers = enumerate_chambers(mov_cone(), walls)
    orbits = chamber_orbits(chambers, walls)
    central = next(k for k, ch in enumerate(chambers) if chamber_of(KAPPA, walls) == ch.signs)
    families = {}
    for orb in orbits:
        rep = chambers[orb[0]]
        neg = negative_f_count(rep)
        outer_neg = sum(1 for s, lab in zip(rep.signs, rep.labels) if lab.startswith("b") and s < 0)
        key = (len(orb), neg + outer_neg)
        name = MOV_FAMILY_NAMES.get(key, f"size{len(orb)}")
        families[name] = {
            "size": len(orb),
            "negative_f": neg,
            "negative_outer": outer_neg,
            "adjacent_to_central": _adjacent(rep, chambers[central]),
            "touches_outer_wall": _touches_outer(rep, chambers, walls),
        }
    return MovCensus(len(chambers), sorted(len(o) for o in orbits), chambers, orbits, central, families)


def _touches_outer(ch: Chamber, chambers: list[Chamber], walls: list[Hyperplane]) -> bool:
    """Is some neighbour across an outer wall a chamber (i.e. the chamber has an outer wall as a facet)?"""
    signs = {c.signs for c in chambers}
    for k, w in enumerate(walls):
        if not w.label.startswith("b"):
            continue
        flipped = ch.signs[:k] + (-ch.signs[k],) + ch.signs[k + 1:]
        if flipped in signs:
            return True
    return False


EFF_FAMILY_NAMES = {0: "nef", 1: "P2_3", 2: "P2_2", 4: "P2"}


def zariski_chamber_census_eff() -> dict:
    walls = f_walls()
    chambers = enumerate_chambers(eff_cone(), walls)
    orbits = chamber_orbits(chambers, walls)
    census = {}
    for orb in orbits:
        rep = chambers[orb[0]]
        neg = negative_f_count(rep)
        name = EFF_FAMILY_NAMES.get(neg)
        if neg == 3:
            # two families with three contracted curves: P2_1 (20 chambers) and P1xP1 (10 chambers)
            name = "P2_1" if _contracted_share_index(rep) else "P1xP1"
        census[name] = {"chambers": len(orb), "negative_f": neg}
    return {"total": len(chambers), "families": census, "orbit_sizes": sorted(len(o) for o in orbits)}


def _contracted_share_index(ch: Chamber) -> bool:
    """Do the negatively paired f_ij share a common index (three curves through one blow-up point)?"""
    neg = [lab for s, lab in zip(ch.signs, ch.labels) if lab.startswith("f") and s < 0]
    pairs = [set(map(int, lab[1:])) for lab in neg]
    return bool(set.intersection(*pairs))


def central_fiber_incidence() -> dict:
    components = ["F0"] + [f"F{i}{j}" for i, j in PAIRS]
    edges = []
    for i, j in PAIRS:
        edges.append({"a": "F0", "b": f"F{i}{j}", "kind": "curve",
                      "self_intersection_on_F0": int(pair(f(i, j), f(i, j)))})
    contained = {f"F{i}{j}": [f"E{k}" for k in range(5) if k not in (i, j)] for i, j in PAIRS}
    return {
        "components": components,
        "edges": edges,
        "contained_in_divisors": contained,
        "kappa_dot_curve": {f"C{i}{j}": int(pair(KAPPA, f(i, j))) for i, j in PAIRS},
    }
