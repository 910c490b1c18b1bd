"""Checks on the 20 relations: they vanish on the parametrization and are torus-homogeneous.

The parametrization is w_ij = phi_ij(x) t_i t_j, u_k = t_k^-2. Inverses are
handled by writing u_k = s_k^2 and reducing modulo t_k s_k - 1, which is a
Groebner basis on its own since the leading terms are coprime.
"""

from __future__ import annotations

from dataclasses import dataclass

from .group import all_phis
from .model import PAIRS, PLUCKER, AmbientModel, default_model, parse_poly, u, w
from .poly import MultiPoly

PARAM_NAMES = ("x1", "x2", "x3", "x4") + tuple(f"t{k}" for k in range(5)) + tuple(f"s{k}" for k in range(5))
_T = 4
_S = 9


def parametrization_images() -> list[MultiPoly]:
    """Image of each of the 15 ambient variables in the parameter ring."""
    positions = [0, 1, 2, 3]
    images: list = [None] * 15
    for (i, j), p in all_phis().items():
        lifted = p.rename(PARAM_NAMES, positions)
        images[w(i, j)] = lifted * MultiPoly.var(PARAM_NAMES, _T + i) * MultiPoly.var(PARAM_NAMES, _T + j)
    for k in range(5):
        images[u(k)] = MultiPoly.var(PARAM_NAMES, _S + k) ** 2
    return images


def reduce_units(p: MultiPoly) -> MultiPoly:
    """Normal form modulo t_k s_k - 1 for k = 0..4."""
    out: dict = {}
    for m, c in p.terms.items():
        mm = list(m)
        for k in range(5):
            q = min(mm[_T + k], mm[_S + k])
            mm[_T + k] -= q
            mm[_S + k] -= q
        key = tuple(mm)
        out[key] = out.get(key, 0) + c
    return MultiPoly(p.names, {m: c for m, c in out.items() if c != 0})


@dataclass
class IdealCheck:
    vanishes: list
    homogeneous: list
    plucker: list

    @property
    def ok(self) -> bool:
        return all(self.vanishes) and all(self.homogeneous) and all(self.plucker)

    def to_dict(self) -> dict:
        return {
            "relations": len(self.vanishes),
            "vanish_on_parametrization": sum(self.vanishes),
            "homogeneous": sum(self.homogeneous),
            "plucker_match": sum(self.plucker),
            "ok": self.ok,
        }


def ideal_check(model: AmbientModel | None = None) -> IdealCheck:
    model = model or default_model()
    images = parametrization_images()
    vanishes = [reduce_units(g.compose(images)).is_zero() for g in model.relations]
    homogeneous = [g.is_homogeneous(model.weights) for g in model.relations]
    no_u = {u(k): 0 for k in range(5)}
    plucker = [g.substitute(no_u) == parse_poly(t, model.names)
               for g, t in zip(model.relations[:5], PLUCKER)]
    return IdealCheck(vanishes, homogeneous, plucker)
