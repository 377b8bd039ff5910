"""Stars, star triangles, paths, cycles and the trees G_s, with their predicted invariants."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .graph_core import SimpleGraph

KINDS = ("star", "startriangle", "path", "cycle", "gs")
_MINIMUM = {"star": 1, "startriangle": 1, "path": 2, "cycle": 3, "gs": 1}


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in _MINIMUM:
            raise FamilyError(f"unknown family {self.kind!r}; expected one of {', '.join(KINDS)}")
        if self.param < _MINIMUM[self.kind]:
            raise FamilyError(f"{self.kind} needs parameter >= {_MINIMUM[self.kind]}, got {self.param}")

    def __str__(self) -> str:
        return f"{self.kind}:{self.param}"


_SPEC = re.compile(r"^\s*([a-z_]+)\s*:\s*(-?\d+)\s*$")


def parse_family(text: str) -> Family:
    match = _SPEC.match(text.lower())
    if match is None:
        raise FamilyError(f"family spec {text!r} is not of the form kind:param")
    kind = match.group(1).replace("_", "")
    if kind == "g":
        kind = "gs"
    return Family(kind, int(match.group(2)))


def looks_like_family(text: str) -> bool:
    match = _SPEC.match(text.lower())
    return bool(match) and match.group(1).replace("_", "") in KINDS


def family_graph(fam: Family) -> SimpleGraph:
    k = fam.param
    if fam.kind == "star":
        leaves = [f"x{i}" for i in range(1, k + 1)]
        return SimpleGraph(["xv"] + leaves, [("xv", x) for x in leaves])
    if fam.kind == "startriangle":
        others = [f"x{i}" for i in range(1, 2 * k + 1)]
        edges = []
        for l in range(k):
            a, b = others[2 * l], others[2 * l + 1]
            edges += [("xv", a), ("xv", b), (a, b)]
        return SimpleGraph(["xv"] + others, edges)
    names = [f"x{i}" for i in range(1, (k + 4 if fam.kind == "gs" else k) + 1)]
    if fam.kind == "path":
        return SimpleGraph(names, list(zip(names, names[1:])))
    if fam.kind == "cycle":
        return SimpleGraph(names, list(zip(names, names[1:])) + [(names[-1], names[0])])
    # G_s: star at x_{s+3} over x_1..x_s, plus the path x_{s+1} x_{s+2} x_{s+3} x_{s+4}
    hub = names[k + 2]
    edges = [(names[i], hub) for i in range(k)]
    edges += [(names[k], names[k + 1]), (names[k + 1], hub), (hub, names[k + 3])]
    return SimpleGraph(names, edges)


@dataclass(frozen=True)
class FamilyPrediction:
    """Closed-form invariants; ``None`` marks a value with no closed form claimed."""

    family: Family
    dim: Optional[int]
    depth: Optional[int]
    reg: Optional[int]
    projdim: Optional[int]
    deg_h: Optional[int]
    star_equality: Optional[bool]
    deg_h_below_dim: bool = False

    def to_dict(self) -> dict:
        return {
            "family": str(self.family),
            "dim": self.dim,
            "depth": self.depth,
            "reg": self.reg,
            "projdim": self.projdim,
            "deg_h": self.deg_h,
            "star_equality": self.star_equality,
            "deg_h_below_dim": self.deg_h_below_dim,
        }


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def path_deg_h(n: int) -> int:
    """deg h(P_n) by the n mod 3 case split."""
    return _ceil_div(n, 2) - 1 if n % 3 == 1 else _ceil_div(n, 2)


def family_predictions(fam: Family) -> FamilyPrediction:
    k = fam.param
    if fam.kind == "star":
        # a star is a one-edge cone: depth 1
        return FamilyPrediction(fam, k, 1, 1, k, k, True)
    if fam.kind == "startriangle":
        # no (*) claim for star triangles; it fails from t = 2 on
        return FamilyPrediction(fam, k, None, None, None, k if k % 2 else k - 1, None)
    if fam.kind == "path":
        depth = _ceil_div(k, 3)
        return FamilyPrediction(fam, _ceil_div(k, 2), depth, _ceil_div(k - 1, 3), k - depth, path_deg_h(k), True)
    if fam.kind == "cycle":
        depth = _ceil_div(k - 1, 3)
        reg = k // 3 + 1 if k % 3 == 2 else k // 3
        ell = k // 3
        if k % 3 == 1:
            deg_h = _ceil_div(3 * ell, 2)
        elif k % 3 == 2:
            deg_h = _ceil_div(3 * ell + 1, 2)
        else:
            deg_h = None
        return FamilyPrediction(fam, _ceil_div(k - 1, 2), depth, reg, k - depth, deg_h, True)
    # G_s on s + 4 vertices
    return FamilyPrediction(fam, k + 2, 2, 1, k + 2, None, True, deg_h_below_dim=True)
