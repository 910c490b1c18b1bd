"""Sparse multivariate polynomials, Groebner bases and localized ideal queries.

Coefficients may be any exact field element supporting ``+ - * /``: in
practice :class:`fractions.Fraction` or :class:`sympres.exact.GaussRational`.
Monomials are exponent tuples whose length equals the number of ring
variables.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import FaceEmpty

Monomial = tuple


def _coef(c):
    return Fraction(c) if isinstance(c, int) else c


class MultiPoly:
    """Polynomial over an ordered list of variable names."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.names = tuple(names)
        clean = {}
        if terms:
            n = len(self.names)
            for m, c in terms.items():
                if len(m) != n:
                    raise ValueError("exponent vector length does not match ring")
                if c:
                    clean[tuple(m)] = _coef(c)
        self.terms = clean

    # construction -----------------------------------------------------
    @classmethod
    def constant(cls, names, c) -> "MultiPoly":
        return cls(names, {(0,) * len(names): c})

    @classmethod
    def var(cls, names, name_or_index) -> "MultiPoly":
        names = tuple(names)
        idx = name_or_index if isinstance(name_or_index, int) else names.index(name_or_index)
        exp = [0] * len(names)
        exp[idx] = 1
        return cls(names, {tuple(exp): 1})

    @classmethod
    def monomial(cls, names, exp, c=1) -> "MultiPoly":
        return cls(names, {tuple(exp): c})

    def _same_ring(self, other):
        if self.names != other.names:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._same_ring(other)
            return other
        return MultiPoly.constant(self.names, other)

    # arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return _raw(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.names, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            if not other:
                return _raw(self.names, {})
            c = _coef(other)
            return _raw(self.names, {m: v * c for m, v in self.terms.items()})
        self._same_ring(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return _raw(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.names, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.names == other.names and self.terms == other.terms
        if not other:
            return not self.terms
        return self.terms == {(0,) * len(self.names): _coef(other)}

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # queries -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def is_monomial(self) -> bool:
        """Exactly one term (any nonzero coefficient)."""
        return len(self.terms) == 1

    def support(self) -> set[int]:
        """Indices of variables that occur in some term."""
        out = set()
        for m in self.terms:
            out.update(i for i, e in enumerate(m) if e)
        return out

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[Sequence[int]]) -> set[tuple]:
        """Set of multidegrees of terms; ``weights[v]`` is the degree of variable v."""
        out = set()
        for m in self.terms:
            deg = [0] * len(weights[0])
            for v, e in enumerate(m):
                if e:
                    for k, w in enumerate(weights[v]):
                        deg[k] += e * w
            out.add(tuple(deg))
        return out

    def is_homogeneous(self, weights) -> bool:
        return len(self.weighted_degrees(weights)) <= 1

    def leading_term(self, order: "MonomialOrder"):
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    # calculus and substitution ----------------------------------------------
    def differentiate(self, var: int) -> "MultiPoly":
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                mm = list(m)
                mm[var] = e - 1
                out[tuple(mm)] = c * e
        return MultiPoly(self.names, out)

    def substitute(self, assignment: Mapping[int, object]) -> "MultiPoly":
        """Partially evaluate: each assigned variable is replaced by a scalar."""
        if not assignment:
            return self
        out: dict = {}
        for m, c in self.terms.items():
            coef = c
            mm = list(m)
            for v, val in assignment.items():
                e = mm[v]
                if e:
                    if not val:
                        coef = 0
                        break
                    coef = coef * val ** e
                    mm[v] = 0
            if not coef:
                continue
            t = tuple(mm)
            s = out.get(t, 0) + coef
            if s:
                out[t] = s
            else:
                out.pop(t, None)
        return _raw(self.names, out)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable k by ``images[k]`` (all images in one common ring)."""
        if len(images) != len(self.names):
            raise ValueError("need one image per variable")
        target = images[0].names
        result = MultiPoly(target)
        powers: dict = {}
        for m, c in self.terms.items():
            term = MultiPoly.constant(target, c)
            for v, e in enumerate(m):
                if e:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    term = term * powers[key]
            result = result + term
        return result

    def map_coefficients(self, fn: Callable) -> "MultiPoly":
        return MultiPoly(self.names, {m: fn(c) for m, c in self.terms.items()})

    def rename(self, names: Sequence[str], positions: Sequence[int]) -> "MultiPoly":
        """Move into another ring; variable k goes to position ``positions[k]``."""
        n = len(names)
        out = {}
        for m, c in self.terms.items():
            mm = [0] * n
            for v, e in enumerate(m):
                if e:
                    mm[positions[v]] += e
            out[tuple(mm)] = c
        return MultiPoly(names, out)

    def evaluate(self, point: Sequence):
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in enumerate(m):
                if e:
                    t = t * point[v] ** e
            total = total + t
        return total

    # serialization ------------------------------------------------------
    def to_text(self) -> str:
        """Canonical text: terms in descending grevlex order, explicit exponents."""
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=GREVLEX.key, reverse=True):
            c = self.terms[m]
            factors = [f"{self.names[v]}^{e}" for v, e in enumerate(m) if e]
            parts.append("(" + str(c) + ")" + "".join("*" + f for f in factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_text()})"


def _raw(names, terms):
    p = MultiPoly.__new__(MultiPoly)
    p.names = names
    p.terms = terms
    return p


def polys_from_names(names: Sequence[str]) -> list[MultiPoly]:
    return [MultiPoly.var(names, i) for i in range(len(names))]


# ---------------------------------------------------------------------------
# monomial orders


class MonomialOrder:
    """Total order on exponent tuples, exposed through a sort key (larger key = larger monomial)."""

    def __init__(self, kind: str = "grevlex", block: int = 0):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.block = block

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return (sum(m), tuple(-x for x in reversed(m)))
        if self.kind == "lex":
            return m
        head, tail = m[:self.block], m[self.block:]
        return (head, sum(tail), tuple(-x for x in reversed(tail)))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r}, {self.block})" if self.kind == "block" else f"MonomialOrder({self.kind!r})"


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------------------
# Groebner bases


class Ideal:
    def __init__(self, generators: Iterable[MultiPoly], names: Sequence[str] | None = None):
        gens = list(generators)
        if names is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit ring")
            names = gens[0].names
        self.names = tuple(names)
        for g in gens:
            if g.names != self.names:
                raise ValueError("generators live in different rings")
        self.generators = gens

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {len(self.names)} variables)"


def _divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _GB:
    """Working state of one Buchberger run on raw term dictionaries."""

    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.order = order
        self._keys: dict = {}
        self.polys: list[dict] = []
        self.lms: list[Monomial] = []
        self.active: list[bool] = []

    def key(self, m):
        k = self._keys.get(m)
        if k is None:
            k = self.order.key(m)
            self._keys[m] = k
        return k

    def lm(self, f: dict):
        return max(f, key=self.key)

    def reduce(self, f: dict, indices: Sequence[int]) -> dict:
        """Full normal form of f with respect to the polynomials at ``indices``."""
        f = dict(f)
        rem = {}
        polys = self.polys
        lms = self.lms
        key = self.key
        while f:
            m = max(f, key=key)
            c = f.pop(m)
            for i in indices:
                g_lm = lms[i]
                if _divides(g_lm, m):
                    g = polys[i]
                    q = tuple(a - b for a, b in zip(m, g_lm))
                    coef = c / g[g_lm]
                    for gm, gc in g.items():
                        if gm is g_lm or gm == g_lm:
                            continue
                        mm = tuple(a + b for a, b in zip(gm, q))
                        v = f.get(mm, 0) - coef * gc
                        if v:
                            f[mm] = v
                        else:
                            f.pop(mm, None)
                    break
            else:
                rem[m] = c
        return rem

    def monic(self, f: dict) -> dict:
        lc = f[self.lm(f)]
        if lc == 1:
            return f
        inv = 1 / lc
        return {m: c * inv for m, c in f.items()}


def _spoly(f: dict, g: dict, lf, lg):
    l = _lcm(lf, lg)
    qf = tuple(a - b for a, b in zip(l, lf))
    qg = tuple(a - b for a, b in zip(l, lg))
    cf = f[lf]
    cg = g[lg]
    out = {}
    for m, c in f.items():
        out[tuple(a + b for a, b in zip(m, qf))] = c * cg
    for m, c in g.items():
        mm = tuple(a + b for a, b in zip(m, qg))
        v = out.get(mm, 0) - c * cf
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _is_const(m):
    return not any(m)


def buchberger_terms(polys: Sequence[dict], n: int, order: MonomialOrder = GREVLEX,
                     stop_on_unit: bool = True) -> list[dict]:
    """Reduced Groebner basis of raw term dictionaries (monic, sorted by leading monomial)."""
    gb = _GB(n, order)
    for f in polys:
        f = {m: _coef(c) for m, c in f.items() if c}
        if not f:
            continue
        live = [i for i, a in enumerate(gb.active) if a]
        f = gb.reduce(f, live)
        if not f:
            continue
        f = gb.monic(f)
        lm = gb.lm(f)
        if _is_const(lm) and stop_on_unit:
            return [{(0,) * n: Fraction(1)}]
        gb.polys.append(f)
        gb.lms.append(lm)
        gb.active.append(True)
    if not gb.polys:
        return []
    pairs = set(itertools.combinations(range(len(gb.polys)), 2))

    def pair_key(p):
        i, j = p
        return (gb.key(_lcm(gb.lms[i], gb.lms[j])), j, i)

    while pairs:
        p = min(pairs, key=pair_key)
        pairs.discard(p)
        i, j = p
        li, lj = gb.lms[i], gb.lms[j]
        if _coprime(li, lj):
            continue
        l = _lcm(li, lj)
        chain = False
        for k in range(len(gb.polys)):
            if k == i or k == j:
                continue
            if _divides(gb.lms[k], l):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    chain = True
                    break
        if chain:
            continue
        s = _spoly(gb.polys[i], gb.polys[j], li, lj)
        if not s:
            continue
        s = gb.reduce(s, range(len(gb.polys)))
        if not s:
            continue
        s = gb.monic(s)
        lm = gb.lm(s)
        if _is_const(lm) and stop_on_unit:
            return [{(0,) * n: Fraction(1)}]
        new = len(gb.polys)
        gb.polys.append(s)
        gb.lms.append(lm)
        gb.active.append(True)
        for k in range(new):
            pairs.add((k, new))
    return _interreduce(gb)


def _interreduce(gb: _GB) -> list[dict]:
    order = sorted(range(len(gb.polys)), key=lambda i: (gb.key(gb.lms[i]), i))
    keep: list[int] = []
    for i in order:
        if not any(_divides(gb.lms[j], gb.lms[i]) for j in keep):
            keep.append(i)
    # keep now holds a minimal basis; reduce tails
    result = []
    for i in keep:
        others = [j for j in keep if j != i]
        f = gb.polys[i]
        lm = gb.lms[i]
        tail = {m: c for m, c in f.items() if m != lm}
        tail = gb.reduce(tail, others)
        g = {lm: f[lm]}
        g.update(tail)
        result.append(gb.monic(g))
    result.sort(key=lambda f: gb.key(gb.lm(f)))
    return result


def buchberger(ideal: Ideal, order: MonomialOrder = GREVLEX) -> Ideal:
    """Reduced Groebner basis of ``ideal`` under ``order``."""
    if not ideal.names:
        raise ValueError("empty ring context")
    n = len(ideal.names)
    basis = buchberger_terms([g.terms for g in ideal.generators], n, order)
    return Ideal([MultiPoly(ideal.names, f) for f in basis], ideal.names)


def normal_form(f: MultiPoly, basis: Ideal, order: MonomialOrder = GREVLEX) -> MultiPoly:
    gb = _GB(len(f.names), order)
    for g in basis.generators:
        gb.polys.append(g.terms)
        gb.lms.append(gb.lm(g.terms))
        gb.active.append(True)
    return MultiPoly(f.names, gb.reduce(f.terms, range(len(gb.polys))))


def is_groebner_basis(basis: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    """Every S-polynomial of the basis reduces to zero."""
    gb = _GB(len(basis.names), order)
    for g in basis.generators:
        gb.polys.append(g.terms)
        gb.lms.append(gb.lm(g.terms))
    everything = range(len(gb.polys))
    for i, j in itertools.combinations(everything, 2):
        s = _spoly(gb.polys[i], gb.polys[j], gb.lms[i], gb.lms[j])
        if s and gb.reduce(s, everything):
            return False
    return True


def is_reduced_basis(basis: Ideal, order: MonomialOrder = GREVLEX) -> bool:
    lms = []
    for g in basis.generators:
        m, c = g.leading_term(order)
        if c != 1:
            return False
        lms.append(m)
    for i, g in enumerate(basis.generators):
        for m in g.terms:
            if any(j != i and _divides(lm, m) for j, lm in enumerate(lms)):
                return False
    return True


def leading_monomials(basis: Ideal, order: MonomialOrder = GREVLEX) -> list[Monomial]:
    return [g.leading_term(order)[0] for g in basis.generators]


def is_unit_ideal(basis: Ideal) -> bool:
    return any(g.is_constant() and not g.is_zero() for g in basis.generators)


def max_independent_set(lms: Sequence[Monomial], n: int) -> list[int]:
    """Largest set S of variable indices such that no monomial is supported inside S."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    if any(not s for s in supports):
        raise FaceEmpty("leading ideal is the unit ideal")
    best: list[int] = []

    def extend(chosen: list[int], start: int):
        nonlocal best
        if len(chosen) + (n - start) <= len(best):
            return
        if len(chosen) > len(best):
            best = list(chosen)
        for v in range(start, n):
            chosen.append(v)
            cs = set(chosen)
            if not any(s <= cs for s in supports):
                extend(chosen, v + 1)
            chosen.pop()

    extend([], 0)
    return best


def krull_dimension(ideal: Ideal, order: MonomialOrder = GREVLEX) -> int:
    basis = buchberger(ideal, order)
    if is_unit_ideal(basis):
        raise FaceEmpty("ideal is the unit ideal")
    return len(max_independent_set(leading_monomials(basis, order), len(ideal.names)))


# ---------------------------------------------------------------------------
# localization at a face of the orthant


def _monomial_content(f: dict) -> Monomial:
    it = iter(f)
    g = list(next(it))
    for m in it:
        for k, e in enumerate(m):
            if e < g[k]:
                g[k] = e
    return tuple(g)


def localize_on_face(ideal: Ideal, face: Iterable[int], weights=None):
    """Restrict an ideal to the torus of a coordinate face.

    Off-face variables are set to 0, each generator is divided by its
    monomial content (a unit once the face variables are inverted), and, if
    ``weights`` (one degree vector per variable) are given and the ideal is
    homogeneous for them, face variables whose degrees are linearly
    independent are set to 1. That normalization is allowed because the
    torus acts transitively on the values of such variables, so every orbit
    meets the slice and all fibers of the projection are isomorphic.

    Returns ``(polys, free_vars, pinned)`` where ``polys`` are raw term
    dictionaries over the original index space restricted to ``free_vars``,
    or ``None`` in place of ``polys`` when some generator became a unit
    times a nonzero constant (the torus part is empty).
    """
    from .exact import rank as field_rank

    face = sorted(set(face))
    n = len(ideal.names)
    off = {v: 0 for v in range(n) if v not in face}
    pinned: list[int] = []
    if weights is not None:
        if not all(g.is_homogeneous(weights) for g in ideal.generators):
            raise ValueError("torus normalization needs generators homogeneous for the weights")
        chosen_rows: list = []
        for v in reversed(face):
            trial = chosen_rows + [list(weights[v])]
            if field_rank(trial) == len(trial):
                chosen_rows = trial
                pinned.append(v)
    assignment = dict(off)
    for v in pinned:
        assignment[v] = 1
    polys = []
    for g in ideal.generators:
        p = g.substitute(assignment)
        if p.is_zero():
            continue
        content = _monomial_content(p.terms)
        if any(content):
            p = _raw(p.names, {tuple(a - b for a, b in zip(m, content)): c for m, c in p.terms.items()})
        if len(p.terms) == 1:
            return None, [], pinned
        polys.append(p.terms)
    free = [v for v in face if v not in pinned]
    return polys, free, pinned


def _rabinowitsch_system(polys: list[dict], free: list[int]):
    """Compress to the variables that occur and adjoin y with y * prod - 1."""
    used = sorted({v for f in polys for m in f for v, e in enumerate(m) if e})
    pos = {v: k for k, v in enumerate(used)}
    k = len(used)
    out = []
    for f in polys:
        g = {}
        for m, c in f.items():
            mm = [0] * (k + 1)
            for v, e in enumerate(m):
                if e:
                    mm[pos[v]] = e
            g[tuple(mm)] = c
        out.append(g)
    one_y = tuple([1] * k + [1])
    out.append({one_y: Fraction(1), (0,) * (k + 1): Fraction(-1)})
    idle = len([v for v in free if v not in pos])
    return out, k + 1, idle


def nonempty_in_face_torus(ideal: Ideal, face: Iterable[int], weights=None) -> bool:
    """Does V(ideal) meet the torus of the coordinate face ``face``?"""
    polys, free, _ = localize_on_face(ideal, face, weights)
    if polys is None:
        return False
    if not polys:
        return True
    system, n, _ = _rabinowitsch_system(polys, free)
    basis = buchberger_terms(system, n, GREVLEX)
    return not any(_is_const(m) for f in basis for m in f if len(f) == 1)


def face_torus_basis(ideal: Ideal, face: Iterable[int], weights=None):
    """Localized Groebner basis data: (basis, nvars, idle_vars, pinned) or None if empty."""
    polys, free, pinned = localize_on_face(ideal, face, weights)
    if polys is None:
        return None
    if not polys:
        return [], 0, len(free), pinned
    system, n, idle = _rabinowitsch_system(polys, free)
    basis = buchberger_terms(system, n, GREVLEX)
    if any(len(f) == 1 and _is_const(next(iter(f))) for f in basis):
        return None
    return basis, n, idle, pinned


def krull_dimension_in_face_torus(ideal: Ideal, face: Iterable[int], weights=None) -> int:
    """Dimension of V(ideal) intersected with the torus of ``face``."""
    data = face_torus_basis(ideal, face, weights)
    if data is None:
        raise FaceEmpty(f"face {sorted(face)} does not meet the variety")
    basis, n, idle, pinned = data
    if not basis:
        return idle + len(pinned)
    key = GREVLEX.key
    lms = [max(f, key=key) for f in basis]
    return len(max_independent_set(lms, n)) + idle + len(pinned)


# ---------------------------------------------------------------------------
# determinants of polynomial matrices


def minor_determinant(matrix: Sequence[Sequence[MultiPoly]], rows: Sequence[int], cols: Sequence[int]) -> MultiPoly:
    """Determinant of the submatrix on ``rows`` x ``cols`` by memoized cofactor expansion."""
    if len(rows) != len(cols):
        raise ValueError("minor needs as many rows as columns")
    rows = list(rows)
    cols = list(cols)
    names = matrix[rows[0]][cols[0]].names if rows else ()
    memo: dict = {}

    def det(r: int, colset: tuple):
        # expand along row index r of the minor, using remaining columns colset
        if r == len(rows):
            return MultiPoly.constant(names, 1)
        got = memo.get(colset)
        if got is not None:
            return got
        total = MultiPoly(names)
        for pos, c in enumerate(colset):
            entry = matrix[rows[r]][c]
            if entry.is_zero():
                continue
            sub = det(r + 1, colset[:pos] + colset[pos + 1:])
            if sub.is_zero():
                continue
            term = entry * sub
            total = total - term if pos % 2 else total + term
        memo[colset] = total
        return total

    return det(0, tuple(cols))
