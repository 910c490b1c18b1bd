"""Command-line reports for every module, with schema-versioned JSON and golden comparison."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import geometry, git, group, kummer, smoothness
from .errors import SympresError
from .exact import INFINITE, GaussRational
from .model import KAPPA, PAIRS, face_mask, shift_set
from .presentation import ideal_check

SCHEMA = "sympres.report/1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUBCOMMANDS = ("group-facts", "eigen-table", "ideal-check", "ifaces", "stability", "smoothness",
               "chambers", "valuations", "toric-demo", "kummer")


class UsageError(Exception):
    pass


def parse_character(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed character {text!r}: expected five comma-separated integers")
    if len(values) != 5:
        raise UsageError(f"character must have 5 entries, got {len(values)}")
    return values


def _scalar(x) -> GaussRational:
    """JSON entry: integer, "p/q" string, or [re, im] pair of those."""
    if isinstance(x, list):
        if len(x) != 2:
            raise UsageError(f"complex entry must be [re, im], got {x!r}")
        return GaussRational(Fraction(str(x[0])), Fraction(str(x[1])))
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return GaussRational(Fraction(str(x)))
    raise UsageError(f"bad matrix entry {x!r}")


def parse_generators(text: str) -> list:
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    text = text.strip()
    if not text:
        return []
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"generators are not valid JSON: {exc}")
    if not isinstance(data, list):
        raise UsageError("generators must be a JSON list of 4x4 matrices")
    mats = []
    for m in data:
        if len(m) != 4 or any(len(r) != 4 for r in m):
            raise UsageError("each generator must be a 4x4 matrix")
        mats.append(tuple(tuple(_scalar(x) for x in r) for r in m))
    return mats


# ---------------------------------------------------------------------------
# sections: each returns (data, checks)


def section_group_facts(cfg) -> tuple[dict, dict]:
    if cfg.generators is not None:
        facts = group.group_facts(parse_generators(cfg.generators))
        return facts, {}
    facts = group.group_facts()
    checks = {
        "order 32": facts["order"] == 32,
        "17 classes of sizes 1,1,2x15": facts["class_sizes"] == [1, 1] + [2] * 15,
        "[G,G] = {+-I} = Z(G)": facts["commutator_is_plus_minus_I"] and facts["commutator_is_center"],
        "abelianization (2,2,2,2)": facts["abelianization"] == [2, 2, 2, 2],
        "N(T_i)/<T_i> has the Q8 profile": all(facts["normalizer_quotients_Q8"]),
    }
    checks.update(facts["identities"])
    return facts, checks


def section_eigen_table(cfg) -> tuple[dict, dict]:
    g = group.the_group()
    forms = [group.phi(*p) for p in PAIRS]
    table = group.sign_table(g, forms)
    dim = group.span_dimension(forms)
    data = {"rows": {f"phi{i}{j}": list(r) for (i, j), r in zip(PAIRS, table)}, "span_dimension": dim}
    checks = {
        "sign table matches": all(tuple(r) == group.SIGN_TABLE[p] for p, r in zip(PAIRS, table)),
        "phi_ij span all quadrics": dim == 10,
    }
    return data, checks


def section_ideal_check(cfg) -> tuple[dict, dict]:
    r = ideal_check()
    data = r.to_dict()
    checks = {
        "relations vanish on the parametrization": all(r.vanishes),
        "relations are homogeneous": all(r.homogeneous),
        "first five relations are the Pluecker trinomials": all(r.plucker),
    }
    return data, checks


def section_ifaces(cfg) -> tuple[dict, dict]:
    faces = git.enumerate_ifaces(use_cyclic_symmetry=cfg.use_cyclic_symmetry)
    masks = {face_mask(f) for f in faces}
    templates = {face_mask(f) for f in git.relevant_faces_from_templates()}
    data = {"count": len(faces), "use_cyclic_symmetry": cfg.use_cyclic_symmetry}
    checks = {
        "closed under the cyclic shift": all(face_mask(shift_set(f, 1)) in masks for f in faces),
        "every template face is an I-face": templates <= masks,
    }
    return data, checks


def section_stability(cfg) -> tuple[dict, dict]:
    report = git.analyze_linearization(character=cfg.character, use_cyclic_symmetry=cfg.use_cyclic_symmetry)
    counts = report.type_counts()
    isotropy = sorted({r.isotropy_order for r in report.relevant if r.isotropy_order is not INFINITE})
    table = {t.label: t for t in git.templates()}
    dims = {}
    for r in report.relevant:
        dims.setdefault(r.type_label, set()).add((r.orbit_dim, r.intersection_dim))
    data = {
        "character": list(cfg.character),
        "semistable": sum(r.semistable for r in report.records),
        "relevant": len(report.relevant),
        "type_counts": dict(sorted(counts.items())),
        "semistable_equals_stable": report.semistable_equals_stable,
        "isotropy_orders": isotropy,
        "dims": {k: sorted(map(list, v)) for k, v in sorted(dims.items())},
    }
    checks = {"every semistable face is stable": report.semistable_equals_stable}
    if tuple(cfg.character) == KAPPA:
        checks.update({
            "167 relevant orbits": len(report.relevant) == 167,
            "type counts match the templates": counts == {k: t.orbits for k, t in table.items()},
            "trivial isotropy": isotropy == [1],
            "dims match the templates": all(
                v == {(table[k].dim, table[k].intersection_dim)} for k, v in dims.items()),
        })
    return data, checks


def _data_dir(cfg) -> Path | None:
    return Path(cfg.data_dir) if cfg.data_dir else None


def section_smoothness(cfg) -> tuple[dict, dict]:
    base = _data_dir(cfg)
    cert_path = base / "certificate.json" if base else smoothness.certificate_path()
    table_path = base / "orbit_types.json" if base else Path(str(cert_path)).with_name("orbit_types.json")
    missing = [str(p) for p in (cert_path, table_path) if not p.is_file()]
    if missing:
        raise UsageError("smoothness needs the certificate and template data; missing " + ", ".join(missing))
    orbit_types = json.loads(table_path.read_text())
    tree = smoothness.load_certificate(cert_path)
    ok, transcript = smoothness.verify_certificate(tree, orbit_types)
    calibration = smoothness.calibrate_linearization(tree)
    mutated = smoothness.mutate_context(tree, "type1", "u4", 1) if "type1" in tree.steps else None
    mutation_step = smoothness.first_failing_step(mutated) if mutated else None
    jac = smoothness.build_jacobian()
    probes = {}
    seen = set()
    for f in git.relevant_faces_from_templates(orbit_types):
        label = git.classify_orbit_type(f, orbit_types)
        if label in seen:
            continue
        seen.add(label)
        probes[label] = smoothness.random_rank_probe(face=f, trials=cfg.trials, seed=cfg.seed,
                                                     jacobian=jac).to_dict()
    ranks = [p["max_rank"] for p in probes.values() if p["max_rank"] is not None]
    data = {
        "verified": ok,
        "transcript": transcript.lines(),
        "calibration": {"first_claim": calibration.first_claim, "all_steps": calibration.all_steps,
                        "chosen": calibration.chosen},
        "mutation_failing_step": mutation_step,
        "probes": dict(sorted(probes.items())),
    }
    checks = {
        "certificate verifies": ok,
        "calibration is unique": calibration.unique,
        "flipping u4 in the type 1 context fails at type1": mutation_step == "type1",
        "probe rank never exceeds 6": all(r <= 6 for r in ranks),
        "probe finds rank 6 on 0C and 1D": all(probes.get(k, {}).get("min_rank") == 6 for k in ("0C", "1D")),
    }
    return data, checks


def section_chambers(cfg) -> tuple[dict, dict]:
    geom = geometry.verify_p24_geometry()
    mov = geometry.mov_chamber_census()
    eff = geometry.zariski_chamber_census_eff()
    inc = geometry.central_fiber_incidence()
    data = {
        "mov_total": mov.total,
        "mov_orbit_sizes": mov.orbit_sizes,
        "mov_families": mov.families,
        "eff_total": eff["total"],
        "eff_families": eff["families"],
        "central_fiber_components": len(inc["components"]),
        "intersection_checks": geom,
    }
    fam = mov.families
    checks = dict(geom)
    checks.update({
        "81 movable chambers": mov.total == 81,
        "S5 census {1,10,30,10,20,5,5}": mov.orbit_sizes == [1, 5, 5, 10, 10, 20, 30],
        "the size-10 orbit adjacent to the central chamber is the P2_3 family":
            fam.get("P2_3 flop", {}).get("adjacent_to_central") is True
            and fam.get("P1xP1 flop", {}).get("adjacent_to_central") is False,
        "Eff census (1,10,30,20,5,10)": [eff["families"].get(k, {}).get("chambers")
                                         for k in ("nef", "P2_3", "P2_2", "P2_1", "P2", "P1xP1")]
        == [1, 10, 30, 20, 5, 10],
        "76 Zariski chambers": eff["total"] == 76,
        "11 central fiber components": len(inc["components"]) == 11,
    })
    return data, checks


def section_valuations(cfg) -> tuple[dict, dict]:
    vals = {f"phi{i}{j}": [group.valuation_index(r, group.phi(i, j)) for r in range(5)] for i, j in PAIRS}
    monos = list(group.monomial_exponents(cfg.degree_bound))
    agree = [group.invariant_monomial_check(m) == group.is_invariant(group.phi_monomial(m)) for m in monos]
    data = {
        "valuations": vals,
        "degree_bound": cfg.degree_bound,
        "monomials": len(monos),
        "invariant_monomials": sum(group.invariant_monomial_check(m) for m in monos),
    }
    checks = {
        "nu_r(phi_ij) = 1 iff r in {i,j}, else 0": all(
            vals[f"phi{i}{j}"][r] == (1 if r in (i, j) else 0) for i, j in PAIRS for r in range(5)),
        "parity criterion agrees with direct invariance": all(agree),
    }
    return data, checks


def section_toric_demo(cfg) -> tuple[dict, dict]:
    box = 5
    panels = {}
    ok = True
    for d in range(8):
        pts = git.cyclic_quotient_sections(2, (1, 1), d, box)
        panels[str(d)] = ["".join("*" if (a, b) in pts else "o" for a in range(box + 1))
                          for b in range(box, -1, -1)]
        expected = {(a, b) for a in range(box + 1) for b in range(box + 1)
                    if (a + b - d) % 2 == 0 and a + b >= d}
        ok &= pts == expected
    return {"r": 2, "weights": [1, 1], "box": box, "panels": panels}, {"A1 section patterns": ok}


def section_kummer(cfg) -> tuple[dict, dict]:
    a = kummer.q8_profile(kummer.A_REP)
    b = kummer.q8_profile(kummer.B_REP)
    part = kummer.isotropy_partition_M4()
    counts = kummer.kummer_counts(part)
    data = {
        "profile_A": list(a.as_tuple()),
        "profile_B": list(b.as_tuple()),
        "profile_solutions": [list(s) for s in kummer.profile_solutions()],
        "special_points": part.special_count,
        "per_reflection": part.per_reflection,
        "counts": [counts.special_points, counts.a1_orbit_points, counts.components],
        "betti": counts.betti,
    }
    checks = {
        "conjugation identity": kummer.verify_conjugation(),
        "profiles (2,3,2) and (4,0,3)": (a.as_tuple(), b.as_tuple()) == ((2, 3, 2), (4, 0, 3)),
        "isotropy partition 16 + 5*48 = 256": part.ok,
        "counts (16, 30, 20)": (counts.special_points, counts.a1_orbit_points, counts.components) == (16, 30, 20),
    }
    return data, checks


SECTIONS: dict[str, Callable] = {
    "group-facts": section_group_facts,
    "eigen-table": section_eigen_table,
    "ideal-check": section_ideal_check,
    "ifaces": section_ifaces,
    "stability": section_stability,
    "smoothness": section_smoothness,
    "chambers": section_chambers,
    "valuations": section_valuations,
    "toric-demo": section_toric_demo,
    "kummer": section_kummer,
}


# ---------------------------------------------------------------------------
# running, golden comparison, output


def _plain(x):
    """JSON-ready copy with deterministic ordering."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(v) for v in x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, GaussRational):
        return str(x)
    if x is INFINITE:
        return "INFINITE"
    return x


def build_report(cfg, names) -> dict:
    sections = {}
    for name in names:
        data, checks = SECTIONS[name](cfg)
        sections[name] = {"data": _plain(data), "checks": _plain(checks), "ok": all(checks.values())}
    return {
        "schema": SCHEMA,
        "config": {"character": list(cfg.character), "use_cyclic_symmetry": cfg.use_cyclic_symmetry,
                   "seed": cfg.seed, "trials": cfg.trials, "degree_bound": cfg.degree_bound},
        "sections": sections,
        "ok": all(s["ok"] for s in sections.values()),
    }


def first_difference(a, b, path: str = "") -> str | None:
    if isinstance(a, dict) and isinstance(b, dict):
        for k in sorted(set(a) | set(b)):
            if k not in a or k not in b:
                return f"{path}/{k}"
            d = first_difference(a[k], b[k], f"{path}/{k}")
            if d:
                return d
        return None
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return f"{path} (length {len(a)} vs {len(b)})"
        for k, (x, y) in enumerate(zip(a, b)):
            d = first_difference(x, y, f"{path}[{k}]")
            if d:
                return d
        return None
    return None if a == b else path or "/"


def compare_golden(report: dict, golden_dir: Path, names) -> list[str]:
    """Differences against <golden_dir>/<section>.json; missing files raise UsageError."""
    diffs = []
    for name in names:
        path = golden_dir / f"{name}.json"
        if not path.is_file():
            raise UsageError(f"missing golden file {path}")
        golden = json.loads(path.read_text())
        if golden.get("schema") != SCHEMA:
            diffs.append(f"{name}: schema {golden.get('schema')!r} != {SCHEMA!r}")
            continue
        d = first_difference(golden["sections"].get(name), report["sections"][name], f"/{name}")
        if d:
            diffs.append(f"{name}: differs at {d}")
    return diffs


def render_text(report: dict) -> str:
    out = []
    for name, sec in report["sections"].items():
        out.append(f"== {name} ==")
        for k, v in sec["data"].items():
            if k == "transcript":
                out.extend(f"  {line}" for line in v)
            else:
                out.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
        for k, v in sec["checks"].items():
            out.append(f"  [{'PASS' if v else 'FAIL'}] {k}")
    out.append(f"overall: {'PASS' if report['ok'] else 'FAIL'}")
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sympres", description=__doc__)
    p.add_argument("subcommand", choices=SUBCOMMANDS + ("all",))
    p.add_argument("--character", default="2,2,2,2,2", help="torus character, five integers")
    p.add_argument("--use-cyclic-symmetry", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--emit-json", metavar="PATH", help="write the structured report ('-' for stdout)")
    p.add_argument("--golden-dir", metavar="DIR", help="compare sections with DIR/<section>.json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--degree-bound", type=int, default=4)
    p.add_argument("--generators", help="group-facts: JSON list of 4x4 matrices (or @file)")
    p.add_argument("--data-dir", help="smoothness: directory holding certificate.json and orbit_types.json")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        cfg = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    names = list(SUBCOMMANDS) if cfg.subcommand == "all" else [cfg.subcommand]
    try:
        cfg.character = parse_character(cfg.character)
        if cfg.trials < 0 or cfg.degree_bound < 0:
            raise UsageError("trials and degree bound must be non-negative")
        report = build_report(cfg, names)
        diffs = compare_golden(report, Path(cfg.golden_dir), names) if cfg.golden_dir else []
    except UsageError as exc:
        print(f"sympres: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SympresError as exc:
        print(f"sympres: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if cfg.emit_json == "-":
        stdout.write(json.dumps(report, indent=1, sort_keys=True) + "\n")
    else:
        stdout.write(render_text(report) + "\n")
        if cfg.emit_json:
            Path(cfg.emit_json).write_text(json.dumps(report, indent=1, sort_keys=True) + "\n")
    for d in diffs:
        print(f"golden mismatch: {d}", file=sys.stderr)
    return EXIT_OK if report["ok"] and not diffs else EXIT_FAIL


def main() -> None:
    sys.exit(run())
