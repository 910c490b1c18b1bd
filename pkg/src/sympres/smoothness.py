"""Jacobian-minor certificate for nonsingularity of the stable locus, plus a rank probe.

The certificate is data (``data/certificate.json``). Each step fixes a
context (variables pinned to 1 by the torus, variables forced to 0), and
claims that some 6x6 minors of the specialized Jacobian are monomials in
a small set of variables. A face of the orthant is settled by a claim when
none of the claim's variables vanish on it: the minor is then a nonzero
monomial at every point of the face torus, so the Jacobian has rank 6
there. Faces that survive every claim are routed to a follow-up step; a
face reaching a leaf unsettled is a failure.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IncompleteTree, Malformed
from .exact import GaussRational, nullspace, rank
from .git import classify_orbit_type, relevant_faces_from_templates
from .group import T, all_phis, mat_identity
from .model import (LINEARIZATIONS, PAIRS, ROW_MAJOR, VARIABLES, AmbientModel,
                    default_model, face_mask, relation_shift_table, shift_set, u, vanishing, w)
from .poly import MultiPoly, minor_determinant

NVARS = 15
NRELS = 20
MINOR_SIZE = 6
PASS = "PASS"
NOT_MONOMIAL = "NOT_MONOMIAL"
ZERO = "ZERO"
OUTSIDE_SET = "OUTSIDE_SET"
WRONG_POWER = "WRONG_POWER"
NO_WITNESS = "NO_WITNESS"

_VAR_INDEX = {name: k for k, name in enumerate(VARIABLES)}


# ---------------------------------------------------------------------------
# certificate data


@dataclass(frozen=True)
class Claim:
    kind: str                      # MONOMIAL_IN or PURE_POWER
    vars: frozenset                # variable indices allowed in the monomial
    exponent: int | None = None    # PURE_POWER only


@dataclass(frozen=True)
class MinorClaim:
    rows: tuple
    cols: tuple
    claim: Claim
    symmetric_shifts: tuple = (0,)
    transcribed_cols: tuple | None = None
    note: str = ""


@dataclass(frozen=True)
class Context:
    ones: frozenset
    zeros: frozenset

    def assignment(self) -> dict:
        out = {v: 1 for v in self.ones}
        out.update({v: 0 for v in self.zeros})
        return out

    def shifted(self, k: int) -> "Context":
        return Context(shift_set(self.ones, k), shift_set(self.zeros, k))

    def applies_to(self, face: frozenset, weights) -> bool:
        """Can a point of the face torus be moved to satisfy this context?"""
        if not self.zeros <= vanishing(face) or not self.ones <= face:
            return False
        return _independent(self.ones, weights)


@dataclass(frozen=True)
class Case:
    goto: str
    shift: int


@dataclass
class CertificateStep:
    id: str
    context: Context
    claims: list
    cases: list = field(default_factory=list)
    leaf: str | None = None


@dataclass(frozen=True)
class Root:
    family: str
    step: str
    shifts: tuple


@dataclass
class CertificateTree:
    roots: list
    steps: dict
    linearization: str = ROW_MAJOR

    def without_family(self, family: str) -> "CertificateTree":
        return CertificateTree([r for r in self.roots if r.family != family], self.steps, self.linearization)


def _var(name: str) -> int:
    if name not in _VAR_INDEX:
        raise Malformed(f"unknown variable {name!r}")
    return _VAR_INDEX[name]


def _indices(values, bound: int, what: str) -> tuple:
    out = tuple(int(x) for x in values)
    if len(out) != MINOR_SIZE:
        raise Malformed(f"{what} must have {MINOR_SIZE} entries, got {len(out)}")
    if len(set(out)) != len(out):
        raise Malformed(f"{what} has repeated indices {out}")
    bad = [x for x in out if not 0 <= x < bound]
    if bad:
        raise Malformed(f"{what} index {bad[0]} out of range 0..{bound - 1}")
    return out


def parse_claim(data: dict) -> Claim:
    kind = data.get("kind")
    if kind == "MONOMIAL_IN":
        return Claim(kind, frozenset(_var(v) for v in data["vars"]))
    if kind == "PURE_POWER":
        exp = int(data["exponent"])
        if exp < 1:
            raise Malformed("PURE_POWER exponent must be positive")
        return Claim(kind, frozenset([_var(data["var"])]), exp)
    raise Malformed(f"unknown claim kind {kind!r}")


def parse_minor_claim(data: dict) -> MinorClaim:
    transcribed = data.get("transcribed_cols")
    return MinorClaim(
        rows=_indices(data["rows"], NVARS, "rows"),
        cols=_indices(data["cols"], NRELS, "cols"),
        claim=parse_claim(data["claim"]),
        symmetric_shifts=tuple(data.get("symmetric_shifts", [0])),
        transcribed_cols=tuple(transcribed) if transcribed is not None else None,
        note=data.get("note", ""),
    )


def parse_certificate(data: dict) -> CertificateTree:
    try:
        steps = {}
        for s in data["steps"]:
            ctx = Context(frozenset(_var(v) for v in s["context"].get("ones", [])),
                          frozenset(_var(v) for v in s["context"].get("zeros", [])))
            if ctx.ones & ctx.zeros:
                raise Malformed(f"step {s['id']}: a variable is pinned to both 0 and 1")
            step = CertificateStep(
                id=s["id"], context=ctx,
                claims=[parse_minor_claim(c) for c in s["claims"]],
                cases=[Case(c["goto"], int(c.get("shift", 0)) % 5) for c in s.get("cases", [])],
                leaf=s.get("leaf"),
            )
            if step.id in steps:
                raise Malformed(f"duplicate step id {step.id}")
            steps[step.id] = step
        roots = [Root(r["family"], r["step"], tuple(int(k) % 5 for k in r.get("shifts", [0])))
                 for r in data["roots"]]
        lin = data.get("linearization", ROW_MAJOR)
    except (KeyError, TypeError, ValueError) as exc:
        raise Malformed(f"bad certificate record: {exc}") from exc
    return CertificateTree(roots, steps, lin)


def certificate_path() -> Path:
    return Path(str(resources.files("sympres").joinpath("data/certificate.json")))


def load_certificate(path: str | Path | None = None) -> CertificateTree:
    path = Path(path) if path is not None else certificate_path()
    with open(path) as fh:
        return parse_certificate(json.load(fh))


def validate_structure(tree: CertificateTree) -> None:
    """Dangling references, cycles, leaves and symmetric shifts."""
    for r in tree.roots:
        if r.step not in tree.steps:
            raise Malformed(f"root {r.family} points to unknown step {r.step}")
    for s in tree.steps.values():
        if bool(s.cases) == bool(s.leaf):
            raise Malformed(f"step {s.id} must have either cases or a leaf")
        if s.leaf is not None and s.leaf != "CONTRADICTION":
            raise Malformed(f"step {s.id}: unknown leaf tag {s.leaf!r}")
        for c in s.cases:
            if c.goto not in tree.steps:
                raise Malformed(f"step {s.id} points to unknown step {c.goto}")
        for mc in s.claims:
            for k in mc.symmetric_shifts:
                if s.context.shifted(k) != s.context:
                    raise Malformed(f"step {s.id}: context is not invariant under shift {k}")
    state: dict[str, int] = {}

    def visit(sid: str) -> None:
        state[sid] = 1
        for c in tree.steps[sid].cases:
            if state.get(c.goto) == 1:
                raise Malformed(f"cycle through step {c.goto}")
            if c.goto not in state:
                visit(c.goto)
        state[sid] = 2

    for sid in tree.steps:
        if sid not in state:
            visit(sid)


# ---------------------------------------------------------------------------
# Jacobian and claims


@dataclass
class JacobianModel:
    """entries[v][g] = d relation_g / d variable_v."""

    entries: list
    linearization: str
    _cache: dict = field(default_factory=dict, repr=False)

    def specialize(self, context: Context) -> list:
        key = (context.ones, context.zeros)
        got = self._cache.get(key)
        if got is None:
            a = context.assignment()
            got = [[e.substitute(a) for e in row] for row in self.entries]
            self._cache[key] = got
        return got

    def minor(self, context: Context, rows: Sequence[int], cols: Sequence[int]) -> MultiPoly:
        return minor_determinant(self.specialize(context), rows, cols)


def build_jacobian(model: AmbientModel | str | None = None) -> JacobianModel:
    if model is None or isinstance(model, str):
        model = default_model(model or ROW_MAJOR)
    entries = [[g.differentiate(v) for g in model.relations] for v in range(model.nvars)]
    return JacobianModel(entries, model.linearization)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str | None
    value: MultiPoly

    def __str__(self) -> str:
        return PASS if self.ok else f"FAIL({self.reason})"


def judge(value: MultiPoly, claim: Claim) -> Verdict:
    if value.is_zero():
        return Verdict(False, ZERO, value)
    if len(value.terms) != 1:
        return Verdict(False, NOT_MONOMIAL, value)
    (mono, _), = value.terms.items()
    support = {v for v, e in enumerate(mono) if e}
    if not support <= claim.vars:
        return Verdict(False, OUTSIDE_SET, value)
    if claim.kind == "PURE_POWER":
        (v,) = tuple(claim.vars)
        if mono[v] != claim.exponent:
            return Verdict(False, WRONG_POWER, value)
    return Verdict(True, None, value)


def check_claim(j: JacobianModel, context: Context, mc: MinorClaim) -> Verdict:
    _indices(mc.rows, NVARS, "rows")
    _indices(mc.cols, NRELS, "cols")
    return judge(j.minor(context, mc.rows, mc.cols), mc.claim)


@dataclass
class StepVerdict:
    step: str
    verdicts: list

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def __str__(self) -> str:
        return PASS if self.ok else next(str(v) for v in self.verdicts if not v.ok)


def check_step(j: JacobianModel, step: CertificateStep) -> StepVerdict:
    return StepVerdict(step.id, [check_claim(j, step.context, mc) for mc in step.claims])


# ---------------------------------------------------------------------------
# replay over the relevant faces


def _independent(vars_: Iterable[int], weights) -> bool:
    vs = sorted(vars_)
    if not vs:
        return True
    return rank([list(weights[v]) for v in vs]) == len(vs)


@dataclass
class FaceRoute:
    face: frozenset
    type_label: str
    path: list            # (step id, shift applied on entry)
    settled_by: tuple | None   # (step id, claim index, symmetric shift)

    def to_dict(self) -> dict:
        return {
            "mask": face_mask(self.face),
            "type": self.type_label,
            "path": [f"{s}@{k}" for s, k in self.path],
            "settled_by": list(self.settled_by) if self.settled_by else None,
        }


@dataclass
class Transcript:
    linearization: str
    steps: list = field(default_factory=list)     # StepVerdicts
    routes: list = field(default_factory=list)    # FaceRoutes
    failure: str | None = None
    failed_step: str | None = None

    def lines(self) -> list[str]:
        out = [f"linearization {self.linearization}"]
        for sv in self.steps:
            for k, v in enumerate(sv.verdicts):
                out.append(f"{sv.step}[{k}] {v}: {v.value.to_text()}")
        if self.routes:
            used = {}
            for r in self.routes:
                key = r.settled_by[0] if r.settled_by else "unsettled"
                used[key] = used.get(key, 0) + 1
            out.append(f"faces {len(self.routes)}; settled per step: "
                       + ", ".join(f"{k}={v}" for k, v in sorted(used.items())))
        if self.failure:
            out.append(f"FAILURE {self.failure}")
        return out

    def to_dict(self) -> dict:
        return {
            "linearization": self.linearization,
            "steps": [{"id": sv.step, "verdicts": [str(v) for v in sv.verdicts],
                       "values": [v.value.to_text() for v in sv.verdicts]} for sv in self.steps],
            "routes": [r.to_dict() for r in self.routes],
            "failure": self.failure,
            "failed_step": self.failed_step,
        }


def _route(tree: CertificateTree, weights, sid: str, face: frozenset, shift: int,
           path: list) -> tuple | None:
    step = tree.steps[sid]
    path.append((sid, shift))
    zeros = vanishing(face)
    for k, mc in enumerate(step.claims):
        for j in mc.symmetric_shifts:
            if not (shift_set(mc.claim.vars, j) & zeros):
                return (sid, k, j)
    for case in step.cases:
        moved = shift_set(face, case.shift)
        if tree.steps[case.goto].context.applies_to(moved, weights):
            return _route(tree, weights, case.goto, moved, case.shift, path)
    return None


def check_coverage(tree: CertificateTree, faces: Sequence[frozenset], weights) -> list[tuple]:
    """For each face, the first (root, shift) whose context applies; raises on a gap."""
    out = []
    for f in faces:
        hit = None
        for r in tree.roots:
            ctx = tree.steps[r.step].context
            for k in r.shifts:
                if ctx.applies_to(shift_set(f, k), weights):
                    hit = (r, k)
                    break
            if hit:
                break
        if hit is None:
            raise IncompleteTree(f"no root applies to face {sorted(f)} ({classify_orbit_type(f)})")
        out.append(hit)
    return out


def verify_certificate(tree: CertificateTree | None = None, orbit_types: dict | None = None,
                       model: AmbientModel | None = None,
                       jacobian: JacobianModel | None = None) -> tuple[bool, Transcript]:
    tree = tree or load_certificate()
    model = model or default_model(tree.linearization)
    validate_structure(tree)
    if any(sign not in (1, -1) for _, sign in relation_shift_table(model, 1)):
        raise ValueError("the cyclic shift does not permute the relations up to sign")
    j = jacobian or build_jacobian(model)
    transcript = Transcript(j.linearization)
    for sid in tree.steps:
        sv = check_step(j, tree.steps[sid])
        transcript.steps.append(sv)
        if not sv.ok:
            transcript.failure = f"step {sid}: {sv}"
            transcript.failed_step = sid
            return False, transcript
    faces = relevant_faces_from_templates(orbit_types)
    starts = check_coverage(tree, faces, model.weights)
    for f, (root, k) in zip(faces, starts):
        path: list = []
        settled = _route(tree, model.weights, root.step, shift_set(f, k), k, path)
        transcript.routes.append(FaceRoute(f, classify_orbit_type(f, orbit_types), path, settled))
        if settled is None:
            transcript.failure = f"face {sorted(f)} unsettled at step {path[-1][0]}"
            transcript.failed_step = path[-1][0]
            return False, transcript
    return True, transcript


def first_failing_step(tree: CertificateTree, **kwargs) -> str | None:
    """Step id at which verification fails, or None when it passes."""
    ok, tr = verify_certificate(tree, **kwargs)
    return None if ok else tr.failed_step


def mutate_context(tree: CertificateTree, step_id: str, var: str, value: int) -> CertificateTree:
    """Copy of the tree with one context variable of one step pinned to a new value."""
    v = _var(var)
    steps = dict(tree.steps)
    old = steps[step_id]
    ones, zeros = set(old.context.ones), set(old.context.zeros)
    ones.discard(v)
    zeros.discard(v)
    (ones if value else zeros).add(v)
    steps[step_id] = CertificateStep(old.id, Context(frozenset(ones), frozenset(zeros)),
                                     old.claims, old.cases, old.leaf)
    return CertificateTree(tree.roots, steps, tree.linearization)


@dataclass
class Calibration:
    first_claim: dict     # linearization -> verdict string for the first certificate minor
    all_steps: dict       # linearization -> every step passes

    @property
    def passing(self) -> list[str]:
        return [lin for lin, v in self.first_claim.items() if v == PASS]

    @property
    def unique(self) -> bool:
        return len(self.passing) == 1 and sum(self.all_steps.values()) == 1

    @property
    def chosen(self) -> str | None:
        return self.passing[0] if len(self.passing) == 1 else None


def calibrate_linearization(tree: CertificateTree | None = None) -> Calibration:
    tree = tree or load_certificate()
    first_root = tree.steps[tree.roots[0].step]
    first, every = {}, {}
    for lin in LINEARIZATIONS:
        j = build_jacobian(lin)
        first[lin] = str(check_claim(j, first_root.context, first_root.claims[0]))
        every[lin] = all(check_step(j, s).ok for s in tree.steps.values())
    return Calibration(first, every)


# ---------------------------------------------------------------------------
# randomized rank probe


@dataclass
class ProbeResult:
    status: str             # "OK" or NO_WITNESS
    min_rank: int | None
    max_rank: int | None
    witnesses: int
    skipped: int

    def to_dict(self) -> dict:
        return dict(status=self.status, min_rank=self.min_rank, max_rank=self.max_rank,
                    witnesses=self.witnesses, skipped=self.skipped)


def _rand_q(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if x or not nonzero:
            return x


def _g(x) -> GaussRational:
    return GaussRational.coerce(x)


def _rational_zero(p: MultiPoly) -> tuple | None:
    """A nonzero point of {-1,0,1}^n on the quadric p = 0."""
    for v in product((-1, 0, 1), repeat=len(p.names)):
        if any(v) and p.evaluate([_g(a) for a in v]) == 0:
            return tuple(_g(a) for a in v)
    return None


def _on_quadric(p: MultiPoly, base: tuple, d: Sequence) -> tuple | None:
    """Second intersection of the line base + s d with the quadric p = 0 (base on it)."""
    d = [_g(a) for a in d]
    q = p.evaluate(d)
    if q == 0:
        return None
    grad = [p.differentiate(k).evaluate(list(base)) for k in range(len(base))]
    lin = sum((g * a for g, a in zip(grad, d)), _g(0))
    s = -lin / q
    return tuple(b + s * a for b, a in zip(base, d))


def _sample_open(rng: random.Random, phis: dict, forced: list) -> list | None:
    """Point with all u nonzero; at most one forced vanishing phi."""
    if len(forced) > 1:
        return None
    x = tuple(_g(_rand_q(rng)) for _ in range(4))
    if forced:
        p = phis[forced[0]]
        base = _rational_zero(p)
        x = _on_quadric(p, base, x) if base else None
        if x is None:
            return None
    t = [_g(_rand_q(rng, True)) for _ in range(5)]
    point = [_g(0)] * NVARS
    for (i, j) in PAIRS:
        point[w(i, j)] = phis[(i, j)].evaluate(list(x)) * t[i] * t[j]
    for k in range(5):
        point[u(k)] = 1 / (t[k] * t[k])
    return point


def _sample_one_zero(rng: random.Random, phis: dict, a: int, forced: list) -> list | None:
    """Limit point as t_a -> infinity along x = x0 + x1/t_a with x0 fixed by T_a."""
    ta = T[a]
    ident = mat_identity(4)
    proj = [[(ident[r][c] + ta[r][c]) / 2 for c in range(4)] for r in range(4)]
    r = [_g(_rand_q(rng)) for _ in range(4)]
    x0 = [sum((proj[i][k] * r[k] for k in range(4)), _g(0)) for i in range(4)]
    # w_aj = D phi_aj(x0)[x1] t_j: linear in x1
    grads = {p: [phis[p].differentiate(k).evaluate(x0) for k in range(4)] for p in PAIRS if a in p}
    lin_forced = [p for p in forced if a in p]
    if any(a not in p for p in forced):
        return None
    if lin_forced:
        basis = nullspace([grads[p] for p in lin_forced])
        if not basis:
            return None
        coeffs = [_g(_rand_q(rng)) for _ in basis]
        x1 = [sum((c * b[k] for c, b in zip(coeffs, basis)), _g(0)) for k in range(4)]
    else:
        x1 = [_g(_rand_q(rng)) for _ in range(4)]
    t = [_g(_rand_q(rng, True)) for _ in range(5)]
    point = [_g(0)] * NVARS
    for (i, j) in PAIRS:
        if a in (i, j):
            other = j if i == a else i
            val = sum((g * d for g, d in zip(grads[(i, j)], x1)), _g(0))
            point[w(i, j)] = val * t[other]
        else:
            point[w(i, j)] = phis[(i, j)].evaluate(x0) * t[i] * t[j]
    for k in range(5):
        point[u(k)] = _g(0) if k == a else 1 / (t[k] * t[k])
    return point


def random_rank_probe(model: AmbientModel | None = None, face: Iterable[int] = (),
                      trials: int = 20, seed: int = 0,
                      jacobian: JacobianModel | None = None) -> ProbeResult:
    """Minimum Jacobian rank over sampled points of Spec R lying on the face torus."""
    model = model or default_model()
    face = frozenset(face)
    j = jacobian or build_jacobian(model)
    rng = random.Random(seed)
    phis = all_phis()
    zeros = vanishing(face)
    zero_u = [k for k in range(5) if u(k) in zeros]
    forced = [p for p in PAIRS if w(*p) in zeros]
    ranks: list[int] = []
    skipped = 0
    for _ in range(trials):
        if len(zero_u) >= 2:
            point = None
        elif zero_u:
            point = _sample_one_zero(rng, phis, zero_u[0], forced)
        else:
            point = _sample_open(rng, phis, forced)
        if point is None or {v for v in range(NVARS) if point[v] == 0} != zeros:
            skipped += 1
            continue
        if any(g.evaluate(point) != 0 for g in model.relations):
            raise ArithmeticError("sampled point does not satisfy the relations")
        values = [[e.evaluate(point) for e in row] for row in j.entries]
        ranks.append(rank(values))
    if not ranks:
        return ProbeResult(NO_WITNESS, None, None, 0, skipped)
    return ProbeResult("OK", min(ranks), max(ranks), len(ranks), skipped)
