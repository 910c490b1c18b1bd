"""Exact scalars and small exact matrix algorithms.

Rationals are :class:`fractions.Fraction`. On top of them this module adds
Gaussian rationals, Gaussian integers, the four-element ring Z[i]/2, integer
Smith normal form with unimodular transforms, and field linear algebra that
works for any coefficient type supporting ``+ - * /``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import EnumerationBound

Rational = Fraction


class _Infinite:
    """Marker for an infinite isotropy group."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


_ZERO = Fraction(0)


def _gr(re: Fraction, im: Fraction) -> "GaussRational":
    """Build from parts that are already Fractions."""
    g = object.__new__(GaussRational)
    g.re = re
    g.im = im
    return g


class GaussRational:
    """Element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def coerce(x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, GaussInt):
            return GaussRational(x.re, x.im)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return GaussRational(x, 0)

    def __add__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        return _gr(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        return _gr(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b:
            return _gr(a * c, a * d if d else _ZERO)
        if not d:
            return _gr(a * c, b * c)
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRational((self.re * o.re + self.im * o.im) / n,
                             (self.im * o.re - self.re * o.im) / n)

    def __rtruediv__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return (GaussRational(1) / self) ** (-n)
        result = GaussRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        o = _as_gr(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


def _as_gr(x):
    if isinstance(x, GaussRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRational(x, 0)
    if isinstance(x, GaussInt):
        return GaussRational(x.re, x.im)
    return NotImplemented


I = GaussRational(0, 1)


class GaussInt:
    """Element re + im*i of Z[i]."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        if not isinstance(re, int) or not isinstance(im, int):
            raise TypeError("GaussInt needs integer parts")
        self.re = re
        self.im = im

    def __add__(self, other):
        o = _as_gi(other)
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_gi(other)
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return _as_gi(other) - self

    def __mul__(self, other):
        o = _as_gi(other)
        return GaussInt(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def mod2(self) -> "Z2i":
        return Z2i(self.re % 2, self.im % 2)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GaussInt(other)
        if not isinstance(other, GaussInt):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"


def _as_gi(x) -> GaussInt:
    if isinstance(x, GaussInt):
        return x
    if isinstance(x, int):
        return GaussInt(x, 0)
    raise TypeError(f"cannot use {type(x).__name__} as a Gaussian integer")


class Z2i:
    """Residue class a + b*i in Z[i]/2, stored as two bits."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0):
        self.a = a & 1
        self.b = b & 1

    @staticmethod
    def elements() -> list["Z2i"]:
        return [Z2i(a, b) for a in (0, 1) for b in (0, 1)]

    @staticmethod
    def from_value(x) -> "Z2i":
        """Reduce an int, GaussInt or integral GaussRational mod 2."""
        if isinstance(x, Z2i):
            return x
        if isinstance(x, int):
            return Z2i(x % 2, 0)
        if isinstance(x, GaussInt):
            return x.mod2()
        if isinstance(x, GaussRational):
            if x.re.denominator != 1 or x.im.denominator != 1:
                raise ValueError(f"{x} is not a Gaussian integer")
            return Z2i(int(x.re) % 2, int(x.im) % 2)
        raise TypeError(f"cannot reduce {type(x).__name__} mod 2")

    def __add__(self, other):
        return Z2i(self.a ^ other.a, self.b ^ other.b)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        # (a+bi)(c+di) = (ac-bd) + (ad+bc)i, and -1 = 1 mod 2
        a, b, c, d = self.a, self.b, other.a, other.b
        return Z2i((a & c) ^ (b & d), (a & d) ^ (b & c))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Z2i(other)
        if not isinstance(other, Z2i):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a or self.b)

    def __repr__(self):
        return f"Z2i({self.a}, {self.b})"


ONE_PLUS_I = Z2i(1, 1)


# ---------------------------------------------------------------------------
# integer matrices


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("shape mismatch in matmul")
        out_row = []
        for j in range(cols):
            acc = 0
            for k in range(inner):
                if row[k]:
                    acc = acc + row[k] * b[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def int_det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, fraction free)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]):
    """Smith normal form with transforms.

    Returns ``(diag, left, right)`` where ``left * m * right`` is the
    rows x cols matrix with ``diag`` on its main diagonal (zero elsewhere),
    ``diag[k]`` divides ``diag[k+1]``, every entry of ``diag`` is
    non-negative and both transforms are unimodular. ``diag`` has
    ``min(rows, cols)`` entries, trailing ones possibly zero.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    for r in a:
        if len(r) != cols:
            raise ValueError("ragged matrix")
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(src, dst, q):  # col_dst += q * col_src
        for r in a:
            r[dst] += q * r[src]
        for r in right:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            bad = next((i for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is not None:
                add_row(bad, t, 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diag = [a[k][k] for k in range(min(rows, cols))]
    return diag, left, right


def isotropy_order(weight_columns: Sequence[Sequence[int]], rows: int | None = None):
    """Order of the isotropy group of a torus acting with the given weights.

    ``weight_columns`` is a list of columns (one weight vector per
    coordinate that does not vanish). The group is finite iff the columns
    span the character lattice rationally; its order is then the product
    of the Smith normal form diagonal.
    """
    cols = [list(c) for c in weight_columns]
    if not cols:
        return INFINITE
    n = rows if rows is not None else len(cols[0])
    matrix = [[c[r] for c in cols] for r in range(n)]
    diag, _, _ = smith_normal_form(matrix)
    if len(diag) < n or any(d == 0 for d in diag):
        return INFINITE
    order = 1
    for d in diag:
        order *= d
    return order


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return len(m) == (len(m[0]) if m else 0) and abs(int_det(m)) == 1


# ---------------------------------------------------------------------------
# linear algebra over a field (Fraction or GaussRational entries)


def _field(x):
    return Fraction(x) if isinstance(x, int) else x


def row_reduce(m: Sequence[Sequence]):
    """Reduced row echelon form over a field; returns (rref, pivot columns)."""
    a = [[_field(x) for x in r] for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(row_reduce(m)[1])


def inverse(m: Sequence[Sequence]):
    n = len(m)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    red, piv = row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def nullspace(m: Sequence[Sequence], ncols: int | None = None):
    """Basis of {v : m v = 0} over the field of the entries."""
    cols = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    red, piv = row_reduce(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, p in enumerate(piv):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Z[i]/2 modules

KERNEL_ENUMERATION_LIMIT = 8


def z2i_vectors(n: int) -> Iterable[tuple]:
    return itertools.product(Z2i.elements(), repeat=n)


def z2i_matvec(m: Sequence[Sequence[Z2i]], v: Sequence[Z2i]) -> tuple:
    out = []
    for row in m:
        acc = Z2i()
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def kernel_over_Z2i(m: Sequence[Sequence]) -> list[tuple]:
    """All vectors v in (Z[i]/2)^c with m v = 0, by enumeration."""
    mat = [[Z2i.from_value(x) for x in r] for r in m]
    c = len(mat[0]) if mat else 0
    if c > KERNEL_ENUMERATION_LIMIT:
        raise EnumerationBound(f"refusing to enumerate 4^{c} vectors")
    return [v for v in z2i_vectors(c) if not any(z2i_matvec(mat, v))]
