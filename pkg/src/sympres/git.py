"""Torus GIT on the 15-dimensional ambient space.

Enumerates the faces of the positive orthant whose torus meets the variety,
decides (semi)stability for a character through the orbit cones, computes
isotropy orders, classifies faces against the orbit-type templates and
fills in dimensions.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations, product
from typing import Iterable, Sequence

from .errors import NotFaithful
from .exact import INFINITE, isotropy_order
from .model import (AmbientModel, KAPPA, PAIRS, default_model, face_mask,
                    mask_face, shift_variable, u, w)
from .poly import krull_dimension_in_face_torus, nonempty_in_face_torus
from .polyhedral import Cone, contains, contains_relative_interior, image_cone

THREADS_ENV = "SYMPRES_THREADS"
OTHER = "OTHER"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# orbit-type templates


def load_orbit_types() -> dict:
    with resources.files("sympres").joinpath("data/orbit_types.json").open() as fh:
        return json.load(fh)


@dataclass(frozen=True)
class Template:
    label: str
    u_zero: str
    w_zero: tuple
    orbits: int
    dim: int
    intersection_dim: int

    def vanishing_sets(self, letters: str = "abcde") -> set[frozenset]:
        """All vanishing sets obtained by injecting the letters into {0..4}."""
        out = set()
        for perm in permutations(range(5)):
            pos = dict(zip(letters, perm))
            zeros = {u(pos[x]) for x in self.u_zero}
            zeros |= {w(pos[p[0]], pos[p[1]]) for p in self.w_zero}
            out.add(frozenset(zeros))
        return out


def templates(table: dict | None = None) -> list[Template]:
    table = table or load_orbit_types()
    return [Template(r["label"], r["u_zero"], tuple(r["w_zero"]), r["orbits"], r["dim"],
                     r["intersection_dim"]) for r in table["rows"]]


_PATTERN_CACHE: dict = {}


def template_patterns(table: dict | None = None) -> dict[frozenset, str]:
    """Map from vanishing set to type label, for every instance of every template."""
    key = json.dumps(table, sort_keys=True) if table is not None else None
    got = _PATTERN_CACHE.get(key)
    if got is not None:
        return got
    letters = (table or load_orbit_types()).get("letters", "abcde")
    out: dict[frozenset, str] = {}
    for t in templates(table):
        for zs in t.vanishing_sets(letters):
            if zs in out and out[zs] != t.label:
                raise ValueError(f"templates {out[zs]} and {t.label} overlap")
            out[zs] = t.label
    _PATTERN_CACHE[key] = out
    return out


def classify_orbit_type(face: Iterable[int], table: dict | None = None) -> str:
    """Orbit-type label of a face (given by its non-vanishing coordinates), or OTHER."""
    zeros = frozenset(range(15)) - frozenset(face)
    return template_patterns(table).get(zeros, OTHER)


def relevant_faces_from_templates(table: dict | None = None) -> list[frozenset]:
    """Faces (non-vanishing sets) listed by the templates, sorted by bitmask."""
    faces = [frozenset(range(15)) - zs for zs in template_patterns(table)]
    return sorted(faces, key=face_mask)


# ---------------------------------------------------------------------------
# face enumeration


def canonical_shift_mask(mask: int) -> int:
    best = mask
    face = mask_face(mask)
    for k in range(1, 5):
        m = face_mask(shift_variable(v, k) for v in face)
        if m < best:
            best = m
    return best


def _shift_orbit(face: frozenset) -> set[int]:
    return {face_mask(shift_variable(v, k) for v in face) for k in range(5)}


def _test_face(args):
    model, mask = args
    return mask, nonempty_in_face_torus(model.ideal, mask_face(mask), model.weights)


def _map(fn, items, threads):
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items, chunksize=64))
    return [fn(x) for x in items]


def enumerate_ifaces(model: AmbientModel | None = None, use_cyclic_symmetry: bool = True,
                     threads: int | None = None) -> list[frozenset]:
    """All faces whose torus meets the variety, sorted by bitmask."""
    model = model or default_model()
    threads = threads or thread_count()
    n = model.nvars
    if use_cyclic_symmetry:
        reps = [m for m in range(1 << n) if canonical_shift_mask(m) == m]
    else:
        reps = list(range(1 << n))
    results = _map(_test_face, [(model, m) for m in reps], threads)
    found: set[int] = set()
    for mask, ok in results:
        if not ok:
            continue
        if use_cyclic_symmetry:
            found |= _shift_orbit(mask_face(mask))
        else:
            found.add(mask)
    return [mask_face(m) for m in sorted(found)]


# ---------------------------------------------------------------------------
# stability


@dataclass
class IFaceRecord:
    face: frozenset
    orbit_cone: Cone
    semistable: bool
    stable: bool
    isotropy_order: object
    type_label: str
    orbit_dim: int
    intersection_dim: int | None = None

    @property
    def mask(self) -> int:
        return face_mask(self.face)

    @property
    def relevant(self) -> bool:
        return self.semistable and self.isotropy_order is not INFINITE

    def to_dict(self) -> dict:
        iso = self.isotropy_order
        return {
            "mask": self.mask,
            "face": sorted(self.face),
            "semistable": self.semistable,
            "stable": self.stable,
            "isotropy_order": "INFINITE" if iso is INFINITE else iso,
            "type": self.type_label,
            "dim": self.orbit_dim,
            "intersection_dim": self.intersection_dim,
        }


@dataclass
class LinearizationReport:
    character: tuple
    records: list = field(default_factory=list)

    @property
    def relevant(self) -> list[IFaceRecord]:
        return [r for r in self.records if r.relevant]

    @property
    def semistable_equals_stable(self) -> bool:
        return all(r.stable for r in self.records if r.semistable)

    def type_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.relevant:
            out[r.type_label] = out.get(r.type_label, 0) + 1
        return out


def torus_isotropy(face: Iterable[int], weights: Sequence[Sequence[int]]):
    """Isotropy order for the torus with character lattice Lambda.

    The weights are written in the lattice Z^5 spanned by the e_i, which
    contains Lambda with index 2; the Smith normal form order is therefore
    twice the order for Lambda, and must be even.
    """
    order = isotropy_order([weights[v] for v in sorted(face)], rows=len(weights[0]))
    if order is INFINITE:
        return INFINITE
    if order % 2:
        raise ArithmeticError(f"odd isotropy order {order} for face {sorted(face)}")
    return order // 2


def analyze_face(face: frozenset, weights, character, table=None) -> IFaceRecord:
    cone = image_cone(face, weights, len(character))
    semi = contains(cone, character)
    iso = torus_isotropy(face, weights)
    stable = semi and iso is not INFINITE and contains_relative_interior(cone, character)
    return IFaceRecord(face=frozenset(face), orbit_cone=cone, semistable=semi, stable=stable,
                       isotropy_order=iso, type_label=classify_orbit_type(face, table),
                       orbit_dim=len(face))


def analyze_linearization(model: AmbientModel | None = None, character: Sequence[int] = KAPPA,
                          faces: Sequence[frozenset] | None = None, use_cyclic_symmetry: bool = True,
                          dimensions: bool = True, threads: int | None = None) -> LinearizationReport:
    model = model or default_model()
    if faces is None:
        faces = enumerate_ifaces(model, use_cyclic_symmetry, threads)
    report = LinearizationReport(tuple(character))
    for f in sorted(faces, key=face_mask):
        report.records.append(analyze_face(f, model.weights, character))
    if dimensions:
        todo = [r for r in report.records if r.relevant]
        dims = _map(_krull_job, [(model, r.face) for r in todo], threads or thread_count())
        for r, d in zip(todo, dims):
            r.intersection_dim = d
    return report


def _krull_job(args):
    model, face = args
    return krull_dimension_in_face_torus(model.ideal, face, model.weights)


def fill_dimensions(record: IFaceRecord, model: AmbientModel | None = None) -> IFaceRecord:
    model = model or default_model()
    record.orbit_dim = len(record.face)
    record.intersection_dim = krull_dimension_in_face_torus(model.ideal, record.face, model.weights)
    return record


# ---------------------------------------------------------------------------
# cyclic quotient sections


def cyclic_quotient_sections(r: int, weights: Sequence[int], d: int, box: int) -> set[tuple]:
    """Exponent vectors m in [0, box]^n with <v, m> = d mod r and <v, m> >= d."""
    if r <= 1:
        raise ValueError("r must exceed 1")
    if any(x < 0 for x in weights):
        raise ValueError("weights must be non-negative")
    if math.gcd(r, *weights) != 1:
        raise NotFaithful(f"gcd of weights {tuple(weights)} and {r} is not 1")
    out = set()
    for m in product(range(box + 1), repeat=len(weights)):
        s = sum(a * b for a, b in zip(weights, m))
        if (s - d) % r == 0 and s >= d:
            out.add(m)
    return out
