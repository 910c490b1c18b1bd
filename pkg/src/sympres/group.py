"""The order-32 symplectic group, its invariants and its action on quadrics."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import GroupTooLarge, NotEigenvector, NotMember, ValuationInfinite
from .exact import GaussRational, I, inverse as field_inverse, rank
from .poly import MultiPoly

Matrix = tuple  # tuple of row tuples of GaussRational

X_NAMES = ("x1", "x2", "x3", "x4")


def gmat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(GaussRational.coerce(x) for x in r) for r in rows)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(b[0])
    return tuple(tuple(sum((r[k] * b[k][j] for k in range(len(b)) if r[k]), GaussRational(0))
                       for j in range(n)) for r in a)


def mat_identity(n: int = 4) -> Matrix:
    return gmat([[int(i == j) for j in range(n)] for i in range(n)])


def mat_neg(a: Matrix) -> Matrix:
    return tuple(tuple(-x for x in r) for r in a)


def mat_inv(a: Matrix) -> Matrix:
    return gmat(field_inverse([list(r) for r in a]))


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(a: Matrix, c) -> Matrix:
    return tuple(tuple(x * c for x in r) for r in a)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_mul(mat_mul(a, b), mat_mul(mat_inv(a), mat_inv(b)))


# ---------------------------------------------------------------------------
# the five reflections and the symplectic form

T = (
    gmat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]),
    gmat([[0, I, 0, 0], [-I, 0, 0, 0], [0, 0, 0, -I], [0, 0, I, 0]]),
    gmat([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
    gmat([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
    gmat([[0, 0, 0, I], [0, 0, -I, 0], [0, I, 0, 0], [-I, 0, 0, 0]]),
)

# omega = dx1 ^ dx3 + dx2 ^ dx4
OMEGA = gmat([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])

IDENTITY = mat_identity(4)
MINUS_IDENTITY = mat_neg(IDENTITY)


def R(i: int, j: int) -> Matrix:
    return mat_mul(T[i], T[j])


def preserves_form(g: Matrix, form: Matrix = OMEGA) -> bool:
    return mat_mul(mat_mul(mat_transpose(g), form), g) == form


# ---------------------------------------------------------------------------
# finite matrix groups


class FiniteMatrixGroup:
    def __init__(self, elements: list[Matrix], generators: list[Matrix]):
        self.elements = elements
        self.generators = generators
        self.index = {g: k for k, g in enumerate(elements)}
        self._table = None

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g):
        return g in self.index

    @property
    def identity(self) -> Matrix:
        return self.elements[0]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @property
    def table(self) -> list[list[int]]:
        if self._table is None:
            self._table = [[self.index[mat_mul(a, b)] for b in self.elements] for a in self.elements]
        return self._table

    def inv(self, a: int) -> int:
        row = self.table[a]
        return row.index(0)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def conjugate(self, a: int, g: int) -> int:
        return self.mul(self.mul(g, a), self.inv(g))


def generate_group(gens: Sequence[Matrix], bound: int = 10 ** 5, dim: int | None = None) -> FiniteMatrixGroup:
    """Closure of the generators, in breadth-first order from the identity."""
    gens = [tuple(tuple(GaussRational.coerce(x) for x in r) for r in g) for g in gens]
    n = dim if dim is not None else (len(gens[0]) if gens else 4)
    one = mat_identity(n)
    elements = [one]
    seen = {one}
    queue = deque([one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(x, g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > bound:
                    raise GroupTooLarge(f"closure exceeds {bound} elements")
                queue.append(y)
    return FiniteMatrixGroup(elements, list(gens))


def the_group() -> FiniteMatrixGroup:
    return generate_group(T)


def conjugacy_classes(g: FiniteMatrixGroup) -> list[list[int]]:
    """Classes as sorted lists of element indices, ordered by (size, smallest index)."""
    seen = set()
    classes = []
    for a in range(g.order):
        if a in seen:
            continue
        cls = sorted({g.conjugate(a, x) for x in range(g.order)})
        seen.update(cls)
        classes.append(cls)
    classes.sort(key=lambda c: (len(c), c[0]))
    return classes


def subgroup_generated(g: FiniteMatrixGroup, gens: Iterable[int]) -> set[int]:
    gens = set(gens)
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.mul(x, s)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def commutator_subgroup(g: FiniteMatrixGroup) -> set[int]:
    comms = {g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))) for a in range(g.order) for b in range(g.order)}
    return subgroup_generated(g, comms)


def center(g: FiniteMatrixGroup) -> set[int]:
    return {a for a in range(g.order) if all(g.mul(a, b) == g.mul(b, a) for b in range(g.order))}


def _cosets(g: FiniteMatrixGroup, h: set[int]) -> dict[int, int]:
    """Map each element to the index of its left coset a*H."""
    label: dict[int, int] = {}
    k = 0
    for a in range(g.order):
        if a in label:
            continue
        for x in h:
            label[g.mul(a, x)] = k
        k += 1
    return label


def abelian_invariants(order_counts: Mapping[int, int], size: int) -> list[int]:
    """Invariant factors of a finite abelian group from |{x : x^n = 1}| for all n | size."""
    factors: list[int] = []
    n = size
    primes = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        primes.append(n)
    elementary: list[int] = []
    for p in primes:
        k = 1
        prev = 1
        ranks = []
        while size % p ** k == 0:
            cnt = order_counts[p ** k]
            r = 0
            q = cnt // prev
            while q > 1:
                q //= p
                r += 1
            ranks.append(r)
            prev = cnt
            k += 1
        # ranks[k-1] = number of cyclic factors of order >= p^k
        for k, r in enumerate(ranks, start=1):
            nxt = ranks[k] if k < len(ranks) else 0
            elementary += [p ** k] * (r - nxt)
    # combine elementary divisors into invariant factors
    by_prime: dict[int, list[int]] = {}
    for q in elementary:
        p = next(pp for pp in primes if q % pp == 0)
        by_prime.setdefault(p, []).append(q)
    length = max((len(v) for v in by_prime.values()), default=0)
    for v in by_prime.values():
        v.sort(reverse=True)
        v += [1] * (length - len(v))
    for k in range(length):
        f = 1
        for v in by_prime.values():
            f *= v[k]
        factors.append(f)
    return sorted(factors)


def abelianization_invariants(g: FiniteMatrixGroup) -> list[int]:
    h = commutator_subgroup(g)
    label = _cosets(g, h)
    size = g.order // len(h)
    reps = {}
    for a, k in label.items():
        reps.setdefault(k, a)
    counts = {}
    divisors = [d for d in range(1, size + 1) if size % d == 0]
    for d in divisors:
        cnt = 0
        for k, a in reps.items():
            x = 0
            for _ in range(d):
                x = g.mul(x, a)
            if x in h:
                cnt += 1
        counts[d] = cnt
    return abelian_invariants(counts, size)


def normalizer_quotient_is_Q8(g: FiniteMatrixGroup, t: Matrix) -> bool:
    """Is N(<t>)/<t> of order 8 with order profile (1, 1, 6) for orders (1, 2, 4)?"""
    if t not in g:
        raise NotMember("element is not in the group")
    ti = g.index[t]
    sub = subgroup_generated(g, [ti])
    norm = [a for a in range(g.order) if all(g.conjugate(x, a) in sub for x in sub)]
    if len(norm) % len(sub):
        return False
    if len(norm) // len(sub) != 8:
        return False
    profile = {1: 0, 2: 0, 4: 0}
    seen = set()
    for a in norm:
        coset = frozenset(g.mul(a, s) for s in sub)
        if coset in seen:
            continue
        seen.add(coset)
        k, x = 1, a
        while x not in sub:
            x = g.mul(x, a)
            k += 1
        if k not in profile:
            return False
        profile[k] += 1
    return profile == {1: 1, 2: 1, 4: 6}


def fixed_space_dimension(m: Matrix) -> int:
    return 4 - rank([list(r) for r in mat_sub(m, mat_identity(len(m)))])


# ---------------------------------------------------------------------------
# quadratic forms and the action on functions

PAIRS = [(i, j) for i, j in combinations(range(5), 2)]

_PHI_TEXT = {
    (0, 1): [(-2, "x1*x4"), (-2, "x2*x3")],
    (0, 2): [(-2 * I, "x1*x4"), (2 * I, "x2*x3")],
    (0, 3): [(2 * I, "x1*x2"), (2 * I, "x3*x4")],
    (0, 4): [(-2, "x1*x2"), (2, "x3*x4")],
    (1, 2): [(2, "x1*x3"), (-2, "x2*x4")],
    (1, 3): [(-1, "x1^2"), (-1, "x2^2"), (1, "x3^2"), (1, "x4^2")],
    (1, 4): [(I, "x1^2"), (I, "x2^2"), (I, "x3^2"), (I, "x4^2")],
    (2, 3): [(-I, "x1^2"), (I, "x2^2"), (-I, "x3^2"), (I, "x4^2")],
    (2, 4): [(1, "x1^2"), (-1, "x2^2"), (-1, "x3^2"), (1, "x4^2")],
    (3, 4): [(2, "x1*x3"), (2, "x2*x4")],
}

# expected signs of T_0..T_4 on each phi_ij
SIGN_TABLE = {
    (0, 1): (-1, -1, 1, 1, 1),
    (0, 2): (-1, 1, -1, 1, 1),
    (0, 3): (-1, 1, 1, -1, 1),
    (0, 4): (-1, 1, 1, 1, -1),
    (1, 2): (1, -1, -1, 1, 1),
    (1, 3): (1, -1, 1, -1, 1),
    (1, 4): (1, -1, 1, 1, -1),
    (2, 3): (1, 1, -1, -1, 1),
    (2, 4): (1, 1, -1, 1, -1),
    (3, 4): (1, 1, 1, -1, -1),
}


def _x_monomial(text: str) -> tuple:
    exp = [0, 0, 0, 0]
    for f in text.split("*"):
        base, _, p = f.partition("^")
        exp[X_NAMES.index(base)] += int(p) if p else 1
    return tuple(exp)


def phi(i: int, j: int) -> MultiPoly:
    terms = {}
    for c, mono in _PHI_TEXT[(min(i, j), max(i, j))]:
        terms[_x_monomial(mono)] = GaussRational.coerce(c)
    return MultiPoly(X_NAMES, terms)


def all_phis() -> dict[tuple, MultiPoly]:
    return {p: phi(*p) for p in PAIRS}


def _monomial_matrix(m: Matrix):
    """For a matrix with one nonzero entry per row: list of (column, entry) per row, else None."""
    out = []
    for r in m:
        nz = [(k, x) for k, x in enumerate(r) if x]
        if len(nz) != 1:
            return None
        out.append(nz[0])
    return out


_UNITS = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}


def _unit_code(x):
    """Exponent k with x = i^k when x is a unit of Z[i], else x itself."""
    x = GaussRational.coerce(x)
    return _UNITS.get((x.re, x.im), x)


def _times(c, x):
    if not isinstance(x, int):
        return c * x
    if x == 0:
        return c
    c = GaussRational.coerce(c)
    if x == 1:
        return GaussRational(-c.im, c.re)
    if x == 2:
        return -c
    return GaussRational(c.im, -c.re)


@lru_cache(maxsize=256)
def _inverse_data(g: Matrix):
    """g^-1 and, when it is monomial, its (column, entry) rows with unit entries as exponent codes."""
    ginv = mat_inv(g)
    mono = _monomial_matrix(ginv)
    if mono is not None:
        mono = [(col, _unit_code(x)) for col, x in mono]
    return ginv, mono


def act(f: MultiPoly, g: Matrix) -> MultiPoly:
    """The function x -> f(g^{-1} x)."""
    ginv, mono = _inverse_data(g)
    n = len(f.names)
    if mono is not None:
        # x_k -> c_k * x_{col_k}; unit factors i^k are tracked as an exponent mod 4
        out: dict = {}
        for m, c in f.terms.items():
            exp = [0] * n
            coef = c
            turns = 0
            for k, e in enumerate(m):
                if e:
                    col, x = mono[k]
                    exp[col] += e
                    if isinstance(x, int):
                        turns += x * e
                    else:
                        coef = coef * x ** e
            coef = _times(coef, turns % 4)
            key = tuple(exp)
            v = out.get(key, 0) + coef
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return MultiPoly(f.names, out)
    xs = [MultiPoly.var(f.names, k) for k in range(n)]
    images = [sum((xs[l] * ginv[k][l] for l in range(n) if ginv[k][l]), MultiPoly(f.names)) for k in range(n)]
    return f.compose(images)


def eigenvalue(f: MultiPoly, g: Matrix):
    """Scalar c with act(f, g) = c * f, or None."""
    h = act(f, g)
    if f.is_zero():
        return None
    m0 = next(iter(f.terms))
    c = h.terms.get(m0)
    if c is None:
        return None
    return c / f.terms[m0] if f * (c / f.terms[m0]) == h else None


def sign_table(g: FiniteMatrixGroup, forms: Sequence[MultiPoly]) -> list[tuple]:
    """Rows: forms; columns: group generators; entries: eigenvalues (+1 / -1)."""
    table = []
    for f in forms:
        row = []
        for t in g.generators:
            c = eigenvalue(f, t)
            if c is None:
                raise NotEigenvector(f"{f.to_text()} is not an eigenvector")
            row.append(int(c.re) if c.im == 0 and c.re.denominator == 1 else c)
        table.append(tuple(row))
    return table


def quadric_coordinates(f: MultiPoly) -> list:
    monos = [m for m in _degree_monomials(4, 2)]
    return [f.terms.get(m, GaussRational(0)) for m in monos]


def _degree_monomials(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _degree_monomials(n - 1, d - k):
            yield (k,) + rest


def span_dimension(forms: Sequence[MultiPoly]) -> int:
    return rank([quadric_coordinates(f) for f in forms])


# ---------------------------------------------------------------------------
# valuations


def _column_basis(m: Matrix) -> list[list]:
    """Basis of the column space of m (as column vectors)."""
    cols = [list(c) for c in zip(*m)]
    basis: list[list] = []
    for c in cols:
        if rank(basis + [c]) > len(basis):
            basis.append(c)
    return basis


def eigenbasis(t: Matrix) -> tuple[list[list], list[list]]:
    """Bases of the (+1) and (-1) eigenspaces of an involution, via (t +- I)/2."""
    if mat_mul(t, t) != mat_identity(len(t)):
        raise ValueError("not an involution")
    half = GaussRational(Fraction(1, 2))
    one = mat_identity(len(t))
    plus = mat_scale(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(t, one)), half)
    minus = mat_scale(mat_sub(one, t), half)
    return _column_basis(plus), _column_basis(minus)


def monomial_valuation(t: Matrix, f: MultiPoly) -> int:
    """Minimum number of (-1)-eigencoordinates over the monomials of f written in an eigenbasis of t."""
    if f.is_zero():
        raise ValuationInfinite("valuation of the zero polynomial")
    plus, minus = eigenbasis(t)
    basis = plus + minus
    n = len(f.names)
    ys = [MultiPoly.var(f.names, k) for k in range(n)]
    # x = B y with B the matrix whose columns are the basis vectors
    images = [sum((ys[k] * basis[k][row] for k in range(n) if basis[k][row]), MultiPoly(f.names))
              for row in range(n)]
    g = f.compose(images)
    weight = [0] * len(plus) + [1] * len(minus)
    return min(sum(e * w for e, w in zip(m, weight)) for m in g.terms)


def valuation_index(r: int, f: MultiPoly) -> int:
    return monomial_valuation(T[r], f)


# ---------------------------------------------------------------------------
# invariant monomials in the phi_ij


def invariant_monomial_check(exponents: Mapping[tuple, int]) -> bool:
    """Parity criterion: every index k is covered an even number of times."""
    for k in range(5):
        s = sum(a for (i, j), a in exponents.items() if k in (i, j))
        if s % 2:
            return False
    return True


def phi_monomial(exponents: Mapping[tuple, int]) -> MultiPoly:
    return _phi_monomial(tuple(exponents.get(p, 0) for p in PAIRS))


@lru_cache(maxsize=4096)
def _phi_monomial(exps: tuple) -> MultiPoly:
    """Product of phi_p^exps[p], built from the product with one factor fewer."""
    last = max((k for k, a in enumerate(exps) if a), default=None)
    if last is None:
        return MultiPoly.constant(X_NAMES, 1)
    smaller = exps[:last] + (exps[last] - 1,) + exps[last + 1:]
    return _phi_monomial(smaller) * phi(*PAIRS[last])


def is_invariant(f: MultiPoly, gens: Sequence[Matrix] = T) -> bool:
    return all(act(f, g) == f for g in gens)


def monomial_exponents(max_degree: int):
    """All exponent maps over the ten pairs with total degree <= max_degree."""
    def rec(k, left):
        if k == len(PAIRS):
            yield {}
            return
        for a in range(left + 1):
            for rest in rec(k + 1, left - a):
                d = dict(rest)
                if a:
                    d[PAIRS[k]] = a
                yield d
    yield from rec(0, max_degree)


# ---------------------------------------------------------------------------
# checklists


def matrix_identities(ts: Sequence[Matrix] = T) -> dict[str, bool]:
    """Identities among the T_i and R_ij = T_i T_j."""
    one, minus = IDENTITY, MINUS_IDENTITY
    idx = range(len(ts))
    ordered = [(i, j) for i in idx for j in idx if i != j]

    def r(i, j):
        return mat_mul(ts[i], ts[j])

    def comm(a, b):
        return mat_mul(mat_mul(a, b), mat_mul(mat_inv(a), mat_inv(b)))

    prod = one
    for t in ts:
        prod = mat_mul(prod, t)
    return {
        "T_i^2 = I": all(mat_mul(t, t) == one for t in ts),
        "T_i symplectic": all(preserves_form(t) for t in ts),
        "T_i reflections (fixed space of dim 2)": all(fixed_space_dimension(t) == 2 for t in ts),
        "[T_i, T_j] = -I": all(comm(ts[i], ts[j]) == minus for i, j in ordered),
        "R_ij^2 = -I": all(mat_mul(r(i, j), r(i, j)) == minus for i, j in ordered),
        "T_0 T_1 T_2 T_3 T_4 = I": prod == one,
        "R_ij = -R_ji = R_ji^-1": all(r(i, j) == mat_neg(r(j, i)) == mat_inv(r(j, i)) for i, j in ordered),
        "[T_s, R_ij] = -I iff s in {i, j}": all(
            comm(ts[s], r(i, j)) == (minus if s in (i, j) else one) for s in idx for i, j in ordered),
        "[R_ij, R_pq] = -I iff pairs meet": all(
            comm(r(*a), r(*b)) == (minus if set(a) & set(b) else one)
            for a in combinations(idx, 2) for b in combinations(idx, 2) if a != b),
    }


def group_facts(gens: Sequence[Matrix] | None = None) -> dict:
    """Order, class sizes, commutator subgroup, centre and abelianization of <gens>."""
    g = generate_group(T if gens is None else gens, dim=4)
    classes = conjugacy_classes(g)
    comm = commutator_subgroup(g)
    cen = center(g)
    facts = {
        "order": g.order,
        "class_count": len(classes),
        "class_sizes": sorted(len(c) for c in classes),
        "commutator_order": len(comm),
        "center_order": len(cen),
        "commutator_is_center": comm == cen,
        "abelianization": abelianization_invariants(g),
    }
    if gens is None:
        minus = g.index[MINUS_IDENTITY]
        facts["commutator_is_plus_minus_I"] = comm == {0, minus}
        facts["normalizer_quotients_Q8"] = [normalizer_quotient_is_Q8(g, t) for t in T]
        facts["identities"] = matrix_identities()
    return facts
