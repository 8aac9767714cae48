"""End-to-end analysis: input parsing, orchestration, canonical JSON report.

The input contract is a small JSON object:

    {"name": str, "dimension": n,
     "summands": [{"vertices": [[int, ...], ...]}, ...],
     "target": [[int, ...], ...]   // optional cross-check
    }

Reports are deterministic: every list is sorted, matrices are row-major,
and rational values are rendered as strings.  Cross-check failures do not
abort the run; they are recorded under "checks" so callers can map them to
an exit status.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import cone as cone_mod
from . import fibration as fib
from . import potential as pot
from . import smoothing as smo
from .polytope import (
    NotAdmissible,
    convex_hull,
    decomposition,
    is_admissible,
    phi,
)


class SchemaError(ValueError):
    """Malformed input; carries the offending field path."""


class TargetMismatch(ValueError):
    pass


class CrossCheckError(RuntimeError):
    pass


@dataclass
class AnalysisOptions:
    hilbert_box: int = 3
    verify_level: str = "full"  # "fast" skips the box-bounded generation check
    root_circle_tol: float = 1e-12
    emit_svg: str | None = None

    def __post_init__(self):
        if self.verify_level not in ("fast", "full"):
            raise SchemaError("options.verify_level: must be 'fast' or 'full'")
        if self.hilbert_box < 1:
            raise SchemaError("options.hilbert_box: must be a positive integer")


@dataclass
class AnalysisRequest:
    name: str
    decomposition: MinkowskiDecomposition
    options: AnalysisOptions = field(default_factory=AnalysisOptions)


def _expect(cond, path, message):
    if not cond:
        raise SchemaError(f"{path}: {message}")


def _parse_vertices(raw, path, dim=None):
    _expect(isinstance(raw, list) and raw, path, "expected a nonempty list of vertices")
    verts = []
    for i, v in enumerate(raw):
        _expect(isinstance(v, list) and v, f"{path}[{i}]", "expected a nonempty integer vector")
        for j, x in enumerate(v):
            _expect(isinstance(x, int) and not isinstance(x, bool), f"{path}[{i}][{j}]", "expected an integer")
        if dim is not None:
            _expect(len(v) == dim, f"{path}[{i}]", f"expected dimension {dim}")
        verts.append(tuple(v))
    return verts


def parse_input(text: str) -> AnalysisRequest:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    _expect(isinstance(raw, dict), "$", "expected a JSON object")
    unknown = set(raw) - {"name", "dimension", "summands", "target", "options"}
    _expect(not unknown, "$", f"unknown fields {sorted(unknown)}")
    name = raw.get("name", "unnamed")
    _expect(isinstance(name, str), "name", "expected a string")
    dim = raw.get("dimension")
    _expect(isinstance(dim, int) and dim >= 1, "dimension", "expected a positive integer")
    _expect(isinstance(raw.get("summands"), list) and raw["summands"], "summands", "expected a nonempty list")
    summands = []
    for i, s in enumerate(raw["summands"]):
        _expect(isinstance(s, dict), f"summands[{i}]", "expected an object")
        _expect(set(s) == {"vertices"}, f"summands[{i}]", "expected exactly the field 'vertices'")
        verts = _parse_vertices(s["vertices"], f"summands[{i}].vertices", dim)
        summands.append(convex_hull(verts))
    target = None
    if "target" in raw:
        target = convex_hull(_parse_vertices(raw["target"], "target", dim))
    opts = AnalysisOptions()
    if "options" in raw:
        o = raw["options"]
        _expect(isinstance(o, dict), "options", "expected an object")
        unknown = set(o) - {"hilbert_box", "verify_level", "root_circle_tol", "emit_svg"}
        _expect(not unknown, "options", f"unknown fields {sorted(unknown)}")
        box = o.get("hilbert_box", 3)
        _expect(isinstance(box, int) and not isinstance(box, bool), "options.hilbert_box", "expected an integer")
        level = o.get("verify_level", "full")
        _expect(isinstance(level, str), "options.verify_level", "expected a string")
        tol = o.get("root_circle_tol", 1e-12)
        _expect(isinstance(tol, (int, float)) and not isinstance(tol, bool) and tol > 0,
                "options.root_circle_tol", "expected a positive number")
        svg_path = o.get("emit_svg")
        _expect(svg_path is None or isinstance(svg_path, str), "options.emit_svg", "expected a path string")
        opts = AnalysisOptions(hilbert_box=box, verify_level=level, root_circle_tol=float(tol), emit_svg=svg_path)
    try:
        d = decomposition(summands, target=None)
    except ValueError as exc:
        raise NotAdmissible(str(exc)) from exc
    if target is not None and d.target != target:
        raise TargetMismatch(
            f"declared target {list(target.vertices)} differs from the Minkowski sum {list(d.target.vertices)}"
        )
    return AnalysisRequest(name=name, decomposition=d, options=opts)


def serialize_request(req: AnalysisRequest) -> str:
    obj = {
        "name": req.name,
        "dimension": req.decomposition.n,
        "summands": [{"vertices": [list(v) for v in s.vertices]} for s in req.decomposition.summands],
        "target": [list(v) for v in req.decomposition.target.vertices],
        "options": {
            "hilbert_box": req.options.hilbert_box,
            "verify_level": req.options.verify_level,
            "root_circle_tol": req.options.root_circle_tol,
            "emit_svg": req.options.emit_svg,
        },
    }
    return json.dumps(obj, indent=2, sort_keys=True)


def _mat(m):
    return [list(r) for r in m]


@dataclass
class AnalysisReport:
    data: dict
    failures: list[str]

    def to_json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def run_pipeline(req: AnalysisRequest) -> AnalysisReport:
    d = req.decomposition
    failures: list[str] = []
    report: dict = {"name": req.name, "dimension": d.n, "summand_count": d.k}

    adm = is_admissible(d)
    report["polytope"] = {
        "target_vertices": _mat(d.target.vertices),
        "summands": [_mat(s.vertices) for s in d.summands],
        "admissible": adm.ok,
        "violations": list(adm.violations),
    }
    if not adm.ok:
        raise NotAdmissible("; ".join(adm.violations))
    report["polytope"]["summand_matrices"] = [
        {"v": _mat(sm.v), "e": _mat(sm.e), "a": _mat(sm.a), "c": _mat(sm.c), "b": list(sm.b)}
        for sm in adm.matrices
    ]

    sigma = cone_mod.cone_over(d.target)
    sigma_dual = cone_mod.dual(sigma)
    st = cone_mod.sigma_tilde(d)
    st_dual = cone_mod.dual(st)
    hb = cone_mod.hilbert_basis(st_dual)
    hb_sigma_dual = cone_mod.hilbert_basis(sigma_dual)
    report["cone"] = {
        "sigma_generators": _mat(sigma.generators),
        "sigma_dual_generators": _mat(sigma_dual.generators),
        "sigma_dual_hilbert_basis": _mat(hb_sigma_dual.elements),
        "sigma_tilde_generators": _mat(st.generators),
        "sigma_tilde_dual_hilbert_basis": _mat(hb.elements),
    }

    g = smo.generator_set(d)
    hom = smo.check_homogeneity(g)
    report["smoothing"] = {
        "generators": [{"label": str(lab), "vector": list(vec)} for lab, vec in g.entries],
        "relations_xy": {
            str(p): list(smo.relation_xy(d, p))
            for p in range(1, d.k + 1)
            if adm.matrices[p - 1].m > 0
        },
        "relations_w": {
            f"{p},{j}": list(smo.relation_w(d, p, j))
            for p in range(1, d.k + 1)
            for j in range(1, d.n - adm.matrices[p - 1].m + 1)
        },
        "fibre_models": [
            {
                "summand": p,
                "equation": smo.fibre_model(d, p).equation,
                "product_coordinates": [str(c) for c in smo.fibre_model(d, p).product_coords],
                "unit_coordinates": [str(c) for c in smo.fibre_model(d, p).unit_coords],
                "general_fibre": f"torus of dimension {d.n}",
            }
            for p in range(1, d.k + 1)
            if adm.matrices[p - 1].m > 0
        ],
        "homogeneity": None if hom is None else {"u": list(hom[0]), "degree": hom[1]},
        "deformation_note": "epsilon parameters are formal tags; relations hold at the lattice level",
    }

    diagrams = fib.new_base_diagram(d)
    for p in range(1, d.k + 1):
        diagrams = fib.transfer_cut(diagrams, p)
    fibration_block = {
        "collapsing_cycles": {
            str(p): [
                {"vector": list(c.vector), "vanishing": [str(l) for l in c.vanishing]}
                for c in fib.collapsing_cycles(d, p)
            ]
            for p in range(1, d.k + 1)
        },
        "regions": {
            str(p): [
                {"index": r.j, "positive_normals": _mat(r.normals)}
                for r in fib.regions(d, p).regions
            ]
            for p in range(1, d.k + 1)
        },
        "monodromies": {
            f"{p},{j}": {
                "topological": _mat(fib.monodromy(d, p, j)),
                "affine": _mat(fib.affine_monodromy(d, p, j)),
            }
            for p in range(1, d.k + 1)
            for j in range(1, adm.matrices[p - 1].m + 1)
        },
        "cut_direction": [0] * d.n + [1],
        "cut_note": fib.CUT_DIRECTION_NOTE,
    }
    final_ok = True
    try:
        final = fib.final_cone(diagrams)
        fibration_block["final_cone_generators"] = _mat(final.generators)
    except AssertionError as exc:
        final_ok = False
        failures.append(f"fibration.final_cone: {exc}")
        final = cone_mod.dual(sigma)
        fibration_block["final_cone_generators"] = _mat(final.generators)
    hone = fib.height_one_normalization(final)
    fibration_block["height_one"] = (
        None
        if hone is None
        else {"matrix": _mat(hone[0]), "dual_polytope_vertices": _mat(hone[1].vertices)}
    )
    report["fibration"] = fibration_block

    po = pot.build_potential(d)
    npoly = pot.newton_polytope(po)
    crit = pot.critical_exists(d, circle_tol=req.options.root_circle_tol)
    report["potential"] = {
        "terms": [[list(e), c] for e, c in po.sorted_terms()],
        "newton_polytope_vertices": _mat(npoly.vertices),
        "critical": _critical_to_dict(crit),
    }

    checks = {
        "final_cone_equals_dual_sigma": final_ok and cone_mod.cones_equal(final, sigma_dual),
        "newton_polytope_is_target_at_height_one": npoly.vertices
        == tuple(v + (1,) for v in d.target.vertices),
        "generator_tails_match_support": all(
            vec[d.n :] == phi(d, vec[: d.n])
            for lab, vec in g.entries
            if lab.kind != "t"
        ),
    }
    if req.options.verify_level == "full":
        checks["generators_generate_semigroup"] = smo.verify_generates(g, st_dual, req.options.hilbert_box)
    for name, ok in checks.items():
        if not ok:
            failures.append(f"checks.{name}")
    report["checks"] = {k: bool(v) for k, v in checks.items()}
    report["check_failures"] = sorted(failures)
    return AnalysisReport(report, failures)


def _critical_to_dict(crit: pot.CriticalReport) -> dict:
    out = {"verdict": crit.verdict, "count": crit.count, "note": crit.note}
    out["families"] = [
        {
            "z1_minimal_polynomial": list(f.z1_minpoly),
            "z2_minimal_polynomial": list(f.z2_minpoly),
            "factor_pair": list(f.pair),
            "points": [[_c(z) for z in p] for p in sorted(f.points, key=_point_key)],
            "all_roots_on_unit_circle": f.on_unit_circle,
        }
        for f in crit.families
    ]
    out["heuristic_points"] = [[_c(z) for z in p] for p in crit.heuristic_points]
    return out


def _c(z: complex) -> list[float]:
    return [float(round(z.real, 12)), float(round(z.imag, 12))]


def _point_key(p):
    return tuple((round(z.real, 9), round(z.imag, 9)) for z in p)
