"""Named worked examples: constructions with fixed seeds plus stored expectations.

Expectations live in ``data/examples.toml``.  ``verify_example`` rebuilds an
instance and compares every stored value with the computed one.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import prod

import numpy as np
import tomli

from .apolarity import annihilator, dual_ring, from_differentiation, general_form, power_sum_form
from .constructions import (
    CurveSpec,
    compressed_level_7,
    gorenstein_from_section,
    is_gorenstein_artinian,
    points_on_curve,
    truncate_algebra,
)
from .deformation import (
    ext1_dim,
    hom_dim,
    is_complete_intersection,
    lev2_analysis,
    obstruction_report,
    predicted_dims,
    rho,
)
from .hilbert import artinian_truncation_H, difference, hilbert_from_betti
from .ideal import Ideal
from .linkage import linkage_chain, random_ci
from .resolution import BettiTable, betti_numbers, differs_by_ghost_pairs
from .ring import DEFAULT_CHAR, PolyRing

log = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def load_registry() -> dict:
    text = resources.files("gradalg").joinpath("data/examples.toml").read_text()
    return tomli.loads(text)


def example_ids() -> list[str]:
    return list(load_registry())


@dataclass
class Check:
    name: str
    expected: object
    got: object
    ok: bool

    def line(self) -> str:
        tag = "ok  " if self.ok else "FAIL"
        return f"{tag} {self.name}: expected {self.expected}, got {self.got}"


def check(name, expected, got, ok=None) -> Check:
    return Check(name, expected, got, expected == got if ok is None else bool(ok))


@dataclass
class Instance:
    name: str
    note: str
    seed: int | None
    char: int
    expected: dict
    ideals: dict[str, Ideal] = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    expectation_only: bool = False


@dataclass
class Verification:
    name: str
    seed: int | None
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "example": self.name,
            "seed": self.seed,
            "ok": self.ok,
            "checks": [{"name": c.name, "expected": _plain(c.expected), "got": _plain(c.got), "ok": c.ok} for c in self.checks],
        }


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, np.integer):
        return int(x)
    return x


def triples(b: BettiTable) -> list[list[int]]:
    return [[j, s, r] for (j, s), r in sorted(b.ranks.items())]


def table(rows, n: int) -> BettiTable:
    return BettiTable({(j, s): r for j, s, r in rows}, n)


# builders

def _ring3(char: int) -> PolyRing:
    return PolyRing(("x", "y", "z"), char)


def _points(inst: Instance, rng) -> None:
    e = inst.expected
    for tag in e["curves"]:
        ps = points_on_curve(CurveSpec.parse(tag, char=inst.char), e["s"], rng)
        inst.ideals[f"B:{tag}"] = ps.curve
        inst.ideals[f"A:{tag}"] = ps.ideal


def _build_ekslicci(inst: Instance, rng) -> None:
    e = inst.expected
    R = PolyRing(("x", "y", "z", "w"), inst.char)
    for k in (1, 2):
        start = random_ci(R, e[f"start_{k}"], rng)
        cert = linkage_chain(start, e[f"chain_{k}"], seed=inst.seed + k)
        inst.data[f"cert_{k}"] = cert
        inst.ideals[f"A_{k}"] = cert.final


def _build_nonequid(inst: Instance, rng) -> None:
    e = inst.expected
    for tag in e["curves"]:
        B = CurveSpec.parse(tag, char=inst.char).curve_ideal()
        inst.ideals[f"B:{tag}"] = B
        inst.ideals[f"A:{tag}"] = truncate_algebra(B, e["j"], e["alpha"], rng)


def _build_twocompgor(inst: Instance, rng) -> None:
    e = inst.expected
    for tag in e["curves"]:
        ps = points_on_curve(CurveSpec.parse(tag, char=inst.char), e["s"], rng)
        g = gorenstein_from_section(ps.ideal, e["t"], rng)
        inst.ideals[f"B:{tag}"] = ps.ideal
        inst.ideals[f"A:{tag}"] = g.ideal
        inst.data[f"hilbert:{tag}"] = g.hilbert


def _build_pencil(inst: Instance, rng) -> None:
    e = inst.expected
    R = _ring3(inst.char)
    D = dual_ring(R)
    forms = [power_sum_form(D, L, e["j"], rng).form for L in e["lengths"]]
    inst.data["forms"] = forms
    inst.ideals["A"] = annihilator(forms, ring=R)


def _build_compressed(inst: Instance, rng) -> None:
    R = _ring3(inst.char)
    for i in (1, 2, 3):
        inst.ideals[f"A_{i}"] = compressed_level_7(i, rng, ring=R)


def _build_exlink(inst: Instance, rng) -> None:
    e = inst.expected
    R = _ring3(inst.char)
    inst.ideals["A_1"] = annihilator([general_form(dual_ring(R), 5, rng)], ring=R)
    cert = linkage_chain(Ideal(R, R.gens()), e["chain"], seed=inst.seed)
    inst.data["cert"] = cert
    inst.ideals["A_2"] = cert.final


def _build_v1(inst: Instance, rng) -> None:
    R = _ring3(inst.char)
    D = dual_ring(R)
    forms = [power_sum_form(D, 4, 7, rng).form, general_form(D, 7, rng)]
    inst.data["forms"] = forms
    inst.ideals["A"] = annihilator(forms, ring=R)


def _build_v2(inst: Instance, rng) -> None:
    e = inst.expected
    R = _ring3(inst.char)
    D = dual_ring(R)
    forms = [power_sum_form(D, 9, 7, rng).form, from_differentiation(D.parse(e["form"].upper()))]
    inst.data["forms"] = forms
    A = annihilator(forms, ring=R)
    inst.ideals["A"] = A
    inst.data["cert"] = linkage_chain(A, e["chain"], seed=inst.seed)


def _build_remlev2comp(inst: Instance, rng) -> None:
    e = inst.expected
    R = _ring3(inst.char)
    L = random_ci(R, e["start"], rng)
    cert = linkage_chain(L, [e["link"]], seed=inst.seed)
    inst.data["cert"] = cert
    inst.ideals["A"] = cert.final
    D = dual_ring(R)
    forms = [power_sum_form(D, k, e["j"], rng).form for k in e["lengths"]]
    inst.ideals["A'"] = annihilator(forms, ring=R)


BUILDERS = {
    "exsing": _points,
    "nonequi": _points,
    "twocomp": None,
    "ekslicci": _build_ekslicci,
    "nonequid": _build_nonequid,
    "twocompgor": _build_twocompgor,
    "excomp_a": _build_pencil,
    "excomp_b": _build_pencil,
    "compressed_level_7": _build_compressed,
    "exlink": _build_exlink,
    "lev2comp_V1": _build_v1,
    "lev2comp_V2": _build_v2,
    "remlev2comp": _build_remlev2comp,
}


def named_example(name: str, seed: int | None = None, char: int = DEFAULT_CHAR) -> Instance:
    """Build a registered instance; ``seed`` overrides the stored one."""
    reg = load_registry()
    if name not in reg:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(reg)}")
    e = reg[name]
    seed = e.get("seed") if seed is None else seed
    inst = Instance(name, e["note"], seed, char, e, expectation_only=e.get("expectation_only", False))
    builder = BUILDERS[name]
    if builder is not None:
        log.info("building %s with seed %s", name, seed)
        builder(inst, np.random.default_rng(seed))
    return inst


# verifiers

def _verify_points(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    for k, tag in enumerate(inst.expected["curves"]):
        B, A = inst.ideals[f"B:{tag}"], inst.ideals[f"A:{tag}"]
        nB = len(e["curve_hilbert"]) - 1
        out.append(check(f"{tag}: H_B", e["curve_hilbert"], B.hilbert_series().values(nB)))
        rows = e["curve_betti"][k] if isinstance(e["curve_betti"][0][0], list) else e["curve_betti"]
        out.append(check(f"{tag}: Betti of B", rows, triples(betti_numbers(B))))
        nA = len(e["points_hilbert"]) - 1
        out.append(check(f"{tag}: H_A", e["points_hilbert"], A.hilbert_series().values(nA)))
        tA = hom_dim(A, A, 0)
        inst.data[f"tangent:{tag}"] = tA
        if "points_betti" in e:
            out.append(check(f"{tag}: Betti of A", e["points_betti"], triples(betti_numbers(A))))
        if "tangent_shift" in e:
            tB = hom_dim(B, B, 0)
            out.append(check(f"{tag}: (N_A)_0 - (N_B)_0", e["tangent_shift"], tA - tB))
        if "component_dims" in e:
            out.append(check(f"{tag}: (N_A)_0", e["component_dims"][k], tA))
    if "points_betti_2" in e:
        A2 = inst.ideals[f"A:{e['curves'][1]}"]
        out.append(check("Betti of A_2", e["points_betti_2"], triples(betti_numbers(A2))))
    if "component_dims" in e:
        imp = e["imported"]["component_dims_B"]
        s = e["s"]
        out.append(check("ledger dim W + s (and s - 1 at the isolated point)", e["component_dims"], [imp[0] + s, imp[1] + s - 1]))
    return out


def _verify_twocomp(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    nB = len(e["hilbert_B"]) - 1
    for key in ("betti_B", "betti_B1", "betti_B2"):
        b = table(e[key], 4)
        out.append(check(f"H from {key}", e["hilbert_B"], b.hilbert(nB)))
        out.append(check(f"reg(I) from {key}", e["reg_I"], b.regularity()))
    b = table(e["betti_B"], 4)
    a0, a1 = e["hilbert_polynomial"]
    vals = b.hilbert(30)
    out.append(check("Hilbert polynomial 33x - 116 on degrees 10..30", True, all(vals[v] == a0 + a1 * v for v in range(10, 31))))
    s = e["s"]
    A = table(e["betti_B"] + e["betti_A_extra"], 4)
    HA = A.hilbert(len(e["delta_A"]) + 3)
    out.append(check("H_A = min(H_B, s)", [min(h, s) for h in vals[: len(HA)]], HA))
    out.append(check("Delta H_A", e["delta_A"], difference(HA)[: len(e["delta_A"])]))
    out.append(check("reg(I_A)", 11, A.regularity()))
    j = e["truncation_j"]
    out.append(check(f"Artinian truncation at j = {j}, alpha = 0", e["hilbert_B"] + [0], artinian_truncation_H(vals, j, 0)))
    dimB = e["imported"]["component_dim_B"]
    out.append(check("component dims dim W + s", e["component_dims"], [dimB + s, dimB + s]))
    return out


def _verify_ekslicci(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    for k in (1, 2):
        cert = inst.data[f"cert_{k}"]
        A = cert.final
        out.append(check(f"chain {k}: Betti", e[f"betti_{k}"], triples(betti_numbers(A))))
        out.append(check(f"chain {k}: ledger dimension", e["dims"][k - 1], cert.final_dim))
        hv = A.hilbert_series().h_vector()
        out.append(check(f"chain {k}: h-vector", e["h_vector"], list(hv)))
        out.append(check(f"chain {k}: deg J + deg J' = prod a_i", True,
                         all(s.degree_J + s.degree_J2 == prod(s.type) for s in cert.steps)))
        out.append(check(f"chain {k}: ledger flagged conditional", True, cert.conditional))
    return out


def _verify_nonequid(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    dims_B = e["imported"]["component_dims_B"]
    tangents = []
    for k, tag in enumerate(e["curves"]):
        B, A = inst.ideals[f"B:{tag}"], inst.ideals[f"A:{tag}"]
        out.append(check(f"{tag}: H_A", e["hilbert"], A.hilbert_series().values(len(e["hilbert"]) - 1)))
        pred = predicted_dims(B, A, "sgenartin", dim_B=dims_B[k], j=e["j"])
        out.append(check(f"{tag}: dim W + alpha(h_j - alpha)", e["component_dims"][k], pred.value))
        tangents.append(hom_dim(A, A, 0))
        if tag == "embedded_point_cubic":
            out.append(check(f"{tag}: Betti of B", e["curve_betti_embedded"], triples(betti_numbers(B))))
            out.append(check(f"{tag}: Betti of A", e["betti_embedded"], triples(betti_numbers(A))))
    out.append(check("tangent dims at the general truncations", e["component_dims"][:2], tangents[:2]))
    big = max(e["component_dims"][:2])
    out.append(check("truncation of the embedded-point curve is a singular point", f"> {big}", tangents[2], tangents[2] > big))
    inst.data["tangents"] = tangents
    return out


def _verify_twocompgor(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    for k, tag in enumerate(e["curves"]):
        B, A = inst.ideals[f"B:{tag}"], inst.ideals[f"A:{tag}"]
        out.append(check(f"{tag}: h-vector", e["h_vector"], inst.data[f"hilbert:{tag}"]))
        out.append(check(f"{tag}: Gorenstein", True, is_gorenstein_artinian(A)))
        dim_W = hom_dim(B, B, 0)
        pred = predicted_dims(B, A, "maintrans", dim_B=dim_W, t=e["t"])
        out.append(check(f"{tag}: dim W + s - 1", e["component_dims"][k], pred.value))
        out.append(check(f"{tag}: (N_A)_0", e["component_dims"][k], hom_dim(A, A, 0)))
    return out


def _verify_pencil(inst: Instance) -> list[Check]:
    e = inst.expected
    rep = lev2_analysis(*inst.data["forms"])
    inst.data["report"] = rep
    out = [
        check("H_A", e["hilbert"], rep.hilbert),
        check("obstruction", e["obstruction"], rep.obstruction),
        check("certified", True, rep.certified),
        check("dimension", e["dim"], rep.dim),
    ]
    if "tensor" in e:
        out.append(check("(I_A ⊗ I_{A_i})_j", e["tensor"], [pt.tensor_dim for pt in rep.parts]))
    else:
        out.append(check("(I_A ⊗ I_{A_i})_j = (I_A I_{A_i})_j", [pt.product_dim for pt in rep.parts], [pt.tensor_dim for pt in rep.parts]))
    return out


def _verify_compressed(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    for i in (1, 2, 3):
        A = inst.ideals[f"A_{i}"]
        b = betti_numbers(A)
        want = table(e["betti"][i - 1], 3)
        j, s, r = e["socle"]
        out.append(check(f"A_{i}: H", e["hilbert"][i - 1], A.hilbert_series().values(7)))
        out.append(check(f"A_{i}: socle term R(-{s})^{r}", {s: r}, b.module(j)))
        if i == 1:
            out.append(check("A_1: Betti", e["betti"][0], triples(b)))
        else:
            out.append(check(f"A_{i}: displayed Betti = computed + cancelling pairs", triples(want), triples(b), differs_by_ghost_pairs(want, b)))
        pred = predicted_dims(None, A, "corart")
        out.append(check(f"A_{i}: dimension", e["dims"][i - 1], pred.value))
        out.append(check(f"A_{i}: tangent", e["dims"][i - 1], hom_dim(A, A, 0)))
    return out


def _verify_exlink(inst: Instance) -> list[Check]:
    e = inst.expected
    out = []
    ext, dims = [], []
    for k in (1, 2):
        A = inst.ideals[f"A_{k}"]
        out.append(check(f"A_{k}: H", e["hilbert"], A.hilbert_series().values(5)))
        out.append(check(f"A_{k}: rho", e["rho"], rho(A)))
        out.append(check(f"A_{k}: 4H(3) - 4H(5)", e["rho"], 4 * A.hilbert(3) - 4 * A.hilbert(5)))
        ext.append(ext1_dim(A, A, 0))
        t = hom_dim(A, A, 0)
        out.append(check(f"A_{k}: tangent - ext1", e["rho"], t - ext[-1]))
        dims.append(t if ext[-1] == 0 else inst.data["cert"].final_dim)
    out.append(check("ext1 dims", e["ext1"], ext))
    out.append(check("component dims", e["dims"], dims))
    return out


def _verify_v1(inst: Instance) -> list[Check]:
    e = inst.expected
    rep = lev2_analysis(*inst.data["forms"])
    inst.data["report"] = rep
    p1 = rep.parts[0]
    return [
        check("H_A", e["hilbert"], rep.hilbert),
        check("(I_A I_{A_1})_7", e["product_tensor"], p1.product_dim),
        check("(I_A ⊗ I_{A_1})_7", e["product_tensor"], p1.tensor_dim),
        check("certified", True, rep.certified),
        check("dimension", e["dim"], rep.dim),
        check("tangent", e["dim"], rep.tangent),
    ]


def _verify_v2(inst: Instance) -> list[Check]:
    e = inst.expected
    A = inst.ideals["A"]
    rep = obstruction_report(A)
    inst.data["report"] = rep
    cert = inst.data["cert"]
    return [
        check("H_A", e["hilbert"], A.hilbert_series().values(7)),
        check("tangent", e["tangent"], rep.tangent),
        check("ext1", e["ext1"], ext1_dim(A, A, 0)),
        check("obstruction", e["obstruction"], rep.obstruction),
        check("chain ends at a complete intersection", True, cert.final_is_ci),
        check("final type", e["final_type"], sorted(cert.final.generator_degrees())),
        check("ledger dimension", e["dim"], cert.start_dim),
        check("deg J + deg J' = prod a_i", True, all(s.degree_J + s.degree_J2 == prod(s.type) for s in cert.steps)),
        check("ledger flagged conditional", True, cert.conditional),
    ]


def _verify_remlev2comp(inst: Instance) -> list[Check]:
    e = inst.expected
    A, A2 = inst.ideals["A"], inst.ideals["A'"]
    return [
        check("H_A", e["hilbert"], A.hilbert_series().values(6)),
        check("H_A'", e["hilbert"], A2.hilbert_series().values(6)),
        check("tangents", e["tangents"], [hom_dim(A, A, 0), hom_dim(A2, A2, 0)]),
        check("ledger dimension", e["ledger"], inst.data["cert"].final_dim),
    ]


VERIFIERS = {
    "exsing": _verify_points,
    "nonequi": _verify_points,
    "twocomp": _verify_twocomp,
    "ekslicci": _verify_ekslicci,
    "nonequid": _verify_nonequid,
    "twocompgor": _verify_twocompgor,
    "excomp_a": _verify_pencil,
    "excomp_b": _verify_pencil,
    "compressed_level_7": _verify_compressed,
    "exlink": _verify_exlink,
    "lev2comp_V1": _verify_v1,
    "lev2comp_V2": _verify_v2,
    "remlev2comp": _verify_remlev2comp,
}


def verify_example(name: str, seed: int | None = None, char: int = DEFAULT_CHAR) -> Verification:
    inst = named_example(name, seed=seed, char=char)
    checks = VERIFIERS[name](inst)
    return Verification(name, inst.seed, checks)
