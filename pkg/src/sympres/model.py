"""The 15-variable ambient model: variables, torus weights and the 20 relations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .poly import Ideal, MultiPoly

PAIRS = [(i, j) for i, j in combinations(range(5), 2)]
W_NAMES = [f"w{i}{j}" for i, j in PAIRS]
U_NAMES = [f"u{k}" for k in range(5)]
VARIABLES = tuple(W_NAMES + U_NAMES)
W_INDEX = {p: k for k, p in enumerate(PAIRS)}
KAPPA = (2, 2, 2, 2, 2)


def w(i: int, j: int) -> int:
    """Variable index of w_ij (order of i, j irrelevant)."""
    return W_INDEX[(min(i, j), max(i, j))]


def u(k: int) -> int:
    return 10 + k


# Two-column display of the relations, one entry per display row.
_DISPLAY = [
    ("w14*w23 + w13*w24 - w12*w34", "w04*w23 - w03*w24 - w02*w34"),
    ("w04*w13 + w03*w14 - w01*w34", "w04*w12 - w02*w14 - w01*w24"),
    ("w03*w12 + w02*w13 - w01*w23", None),
    ("w02*w12*u2 - w03*w13*u3 + w04*w14*u4", "w01*w14*u1 - w02*w24*u2 + w03*w34*u3"),
    ("w01*w13*u1 + w02*w23*u2 + w04*w34*u4", "w01*w12*u1 + w03*w23*u3 + w04*w24*u4"),
    ("w03*w04*u0 - w13*w14*u1 + w23*w24*u2", "w02*w04*u0 + w12*w14*u1 + w23*w34*u3"),
    ("w01*w04*u0 + w12*w24*u2 + w13*w34*u3", "w02*w03*u0 - w12*w13*u1 - w24*w34*u4"),
    ("w01*w03*u0 + w12*w23*u2 + w14*w34*u4", "w01*w02*u0 + w13*w23*u3 - w14*w24*u4"),
    ("w02^2*u0 + w12^2*u1 + w23^2*u3 + w24^2*u4", "w03^2*u0 + w13^2*u1 + w23^2*u2 + w34^2*u4"),
    ("w01^2*u1 + w02^2*u2 + w03^2*u3 + w04^2*u4", "w04^2*u0 + w14^2*u1 + w24^2*u2 + w34^2*u3"),
    ("w01^2*u0 + w12^2*u2 + w13^2*u3 + w14^2*u4", None),
]

PLUCKER = [
    "w14*w23 + w13*w24 - w12*w34",
    "w04*w23 - w03*w24 - w02*w34",
    "w04*w13 + w03*w14 - w01*w34",
    "w04*w12 - w02*w14 - w01*w24",
    "w03*w12 + w02*w13 - w01*w23",
]

ROW_MAJOR = "row-major"
COLUMN_MAJOR = "column-major"
LINEARIZATIONS = (ROW_MAJOR, COLUMN_MAJOR)


def relation_texts(linearization: str = ROW_MAJOR) -> list[str]:
    """The 20 relations in the requested reading order of the display."""
    if linearization == ROW_MAJOR:
        return [t for row in _DISPLAY for t in row if t is not None]
    if linearization == COLUMN_MAJOR:
        return [r[0] for r in _DISPLAY] + [r[1] for r in _DISPLAY if r[1] is not None]
    raise ValueError(f"unknown linearization {linearization!r}")


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z0-9_^*]+)?")


def parse_poly(text: str, names=VARIABLES) -> MultiPoly:
    """Parse a sum of signed monomials such as ``2*x1^2*x3 - x4``."""
    names = tuple(names)
    index = {n: k for k, n in enumerate(names)}
    terms: dict = {}
    pieces = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    if not pieces:
        raise ValueError(f"cannot parse {text!r}")
    for piece in pieces:
        sign = -1 if piece.startswith("-") else 1
        piece = piece.lstrip("+-")
        coef = Fraction(sign)
        exp = [0] * len(names)
        for factor in piece.split("*"):
            if not factor:
                raise ValueError(f"cannot parse {text!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coef *= Fraction(factor)
                continue
            base, _, power = factor.partition("^")
            if base not in index:
                raise ValueError(f"unknown variable {base!r} in {text!r}")
            exp[index[base]] += int(power) if power else 1
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coef
    return MultiPoly(names, terms)


def weight_columns() -> list[tuple[int, ...]]:
    """Degree of each variable in Z^5: deg w_ij = e_i + e_j, deg u_k = -2 e_k."""
    cols = []
    for i, j in PAIRS:
        v = [0] * 5
        v[i] += 1
        v[j] += 1
        cols.append(tuple(v))
    for k in range(5):
        v = [0] * 5
        v[k] = -2
        cols.append(tuple(v))
    return cols


def weight_matrix() -> list[list[int]]:
    """The 5 x 15 matrix U whose columns are the variable degrees."""
    cols = weight_columns()
    return [[c[r] for c in cols] for r in range(5)]


@dataclass
class AmbientModel:
    names: tuple = VARIABLES
    linearization: str = ROW_MAJOR
    relations: list = field(default_factory=list)
    weights: list = field(default_factory=weight_columns)

    def __post_init__(self):
        if not self.relations:
            self.relations = [parse_poly(t, self.names) for t in relation_texts(self.linearization)]

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.relations, self.names)

    @property
    def nvars(self) -> int:
        return len(self.names)


def default_model(linearization: str = ROW_MAJOR) -> AmbientModel:
    return AmbientModel(linearization=linearization)


# ---------------------------------------------------------------------------
# cyclic symmetry i -> i+1 mod 5


def shift_variable(v: int, k: int = 1) -> int:
    """Index of the image of variable v under the index shift i -> i+k mod 5."""
    if v >= 10:
        return 10 + (v - 10 + k) % 5
    i, j = PAIRS[v]
    return w((i + k) % 5, (j + k) % 5)


def shift_set(vars_, k: int = 1) -> frozenset:
    return frozenset(shift_variable(v, k) for v in vars_)


def shift_poly(p: MultiPoly, k: int = 1) -> MultiPoly:
    n = len(p.names)
    out = {}
    for m, c in p.terms.items():
        mm = [0] * n
        for v, e in enumerate(m):
            if e:
                mm[shift_variable(v, k)] = e
        out[tuple(mm)] = c
    return MultiPoly(p.names, out)


def relation_shift_table(model: AmbientModel, k: int = 1) -> list[tuple[int, int]]:
    """For each relation g, the pair (index, sign) with shift(g) = sign * relation[index].

    Raises ValueError if the relation set is not permuted up to sign.
    """
    table = []
    for g in model.relations:
        s = shift_poly(g, k)
        for idx, h in enumerate(model.relations):
            if s == h:
                table.append((idx, 1))
                break
            if s == -h:
                table.append((idx, -1))
                break
        else:
            raise ValueError(f"shifted relation {s.to_text()} is not a relation up to sign")
    return table


def face_mask(face) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def mask_face(mask: int, n: int = 15) -> frozenset:
    return frozenset(v for v in range(n) if mask >> v & 1)


def vanishing(face, n: int = 15) -> frozenset:
    return frozenset(range(n)) - frozenset(face)


def name_set(vars_) -> list[str]:
    return [VARIABLES[v] for v in sorted(vars_)]
