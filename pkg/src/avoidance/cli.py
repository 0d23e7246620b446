"""Command-line interface: ``avoidance <subcommand> [config.json] [options]``.

Every subcommand reads a JSON job (a file, ``-`` for stdin, or ``--json``),
applies command-line overrides, validates it against ``JOB_SCHEMA`` and
writes a JSON report (an SVG for ``plot``) to stdout or ``--out``.

Exit codes: 0 success, 2 input error, 3 computational failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from . import arrangements as ar
from . import catalog
from . import classify as cl
from . import convexity as cv
from . import forms
from . import plot as pl
from .cache import FormCache
from .classify import CI_CURVE, HYPERSURFACE, VarietySpec
from .grassmann import linspace_from_json, linspace_to_json
from .poly import InputError
from .regions import AtlasConfig, build_atlas, glue_charts

_RAT = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_MATRIX = {"type": "array", "minItems": 1, "items": {"type": "array", "minItems": 1, "items": _RAT}}

JOB_SCHEMA = {
    "type": "object",
    "properties": {
        "ambient_dim": {"type": "integer", "minimum": 2},
        "variety": {
            "type": "object",
            "properties": {
                "named": {"type": "string"},
                "kind": {"enum": [HYPERSURFACE, CI_CURVE]},
                "equations": {"type": "array", "minItems": 1, "items": {"type": "string"}},
                "name": {"type": "string"},
                "parametrization": {"type": "array", "items": {"type": "array",
                                                               "items": {"type": "integer"}}},
            },
            "oneOf": [{"required": ["named"]}, {"required": ["equations"]}],
        },
        "k": {"type": "integer", "minimum": 1},
        "sampling": {
            "type": "object",
            "properties": {"count": {"type": "integer", "minimum": 1},
                           "seed": {"type": "integer", "minimum": 0},
                           "height": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "space": _MATRIX,
        "normal": {"type": "array", "items": _RAT},
        "atlas": {
            "type": "object",
            "properties": {"model": {"enum": ["auto", "line", "point", "dual", "curve"]},
                           "mode": {"enum": ["multichart", "chart1", "chart2"]},
                           "max_merge_attempts": {"type": "integer", "minimum": 1},
                           "neighbors": {"type": "integer", "minimum": 1},
                           "glue": {"type": "boolean"},
                           "glue_samples": {"type": "integer", "minimum": 1},
                           "hurwitz_check": {"type": "boolean"}},
            "additionalProperties": False,
        },
        "arrangement": {
            "type": "object",
            "properties": {"l": {"type": "integer", "minimum": 0},
                           "n": {"type": "integer", "minimum": 2},
                           "normals": {"type": "array", "items": {"type": "array",
                                                                  "items": {"type": "integer"}}},
                           "brute_force": {"type": "boolean"}},
            "additionalProperties": False,
        },
        "slice": {
            "type": "object",
            "properties": {"normal": {"type": "array", "items": _RAT, "minItems": 4, "maxItems": 4},
                           "matrix": _MATRIX,
                           "trials": {"type": "integer", "minimum": 1},
                           "atlas_samples": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "convexity": {
            "type": "object",
            "properties": {"trials": {"type": "integer", "minimum": 1},
                           "regions": {"oneOf": [{"enum": ["avoidant"]},
                                                 {"type": "array", "items": {"type": "integer"}}]},
                           "union": {"type": "boolean"},
                           "chart": {"enum": list(cv.CHARTS)}},
            "additionalProperties": False,
        },
        "plot": {
            "type": "object",
            "properties": {"width": {"type": "integer", "minimum": 1},
                           "height": {"type": "integer", "minimum": 1},
                           "bounds": {"type": "array", "items": _RAT, "minItems": 4, "maxItems": 4}},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


# ---------------------------------------------------------------------------
# job handling
# ---------------------------------------------------------------------------

def load_job(args):
    if args.json is not None:
        text = args.json
    elif args.config in (None, "-"):
        text = sys.stdin.read() if args.config == "-" else "{}"
    else:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise InputError(f"cannot read {args.config}: {e}") from e
    try:
        job = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    if not isinstance(job, dict):
        raise InputError("the job must be a JSON object")
    if args.named:
        job["variety"] = {"named": args.named}
    samp = job.setdefault("sampling", {})
    if args.seed is not None:
        samp["seed"] = args.seed
    if getattr(args, "samples", None) is not None:
        samp["count"] = args.samples
    try:
        jsonschema.validate(job, JOB_SCHEMA)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InputError(f"schema violation at {path}: {e.message}") from e
    return job


def job_variety(job) -> VarietySpec:
    v = job.get("variety")
    if v is None:
        raise InputError("the job needs a 'variety' block")
    if "named" in v:
        return catalog.named(v["named"])
    n = job.get("ambient_dim", v.get("ambient_dim"))
    return VarietySpec.from_json(v, n)


def _rat(x):
    return Fraction(str(x).replace(" ", ""))


def _seed(job):
    return job.get("sampling", {}).get("seed", 0)


def _default_k(X):
    if X.kind == CI_CURVE:
        return 3
    return 2


def _atlas_config(job, X, **over):
    s = job.get("sampling", {})
    a = job.get("atlas", {})
    kw = dict(k=job.get("k", _default_k(X)), samples=s.get("count", 2000), seed=s.get("seed", 0),
              height=s.get("height", 8))
    for f in ("model", "mode", "max_merge_attempts", "neighbors"):
        if f in a:
            kw[f] = a[f]
    kw.update(over)
    return AtlasConfig(X, **kw)


def _plain(obj):
    """JSON-native copy (tuples become lists, enums become values)."""
    return json.loads(json.dumps(obj, default=_default))


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "value"):
        return o.value
    raise TypeError(f"not serializable: {type(o).__name__}")


def dumps(report):
    return json.dumps(report, indent=2, default=_default) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cli_classify(job, args):
    X = job_variety(job)
    if "normal" in job:
        u = [_rat(x) for x in job["normal"]]
        if X.kind == CI_CURVE:
            c = cl.classify_hyperplane_vs_curve(X, u, seed=_seed(job))
        else:
            c = cl.classify_dual_line(X, u)
        subject = {"normal": [str(x) for x in u]}
    elif "space" in job:
        L = linspace_from_json(job["space"])
        if L.n != X.n:
            raise InputError("the space lives in the wrong ambient dimension")
        if L.k == 1:
            c = cl.classify_point(X, L.matrix[0])
        elif L.k == 2 and X.kind == HYPERSURFACE:
            c = cl.classify_line_witness(X, L)
        elif X.kind == CI_CURVE and L.k == 3:
            c = cl.classify_hyperplane_vs_curve(X, L, seed=_seed(job))
        else:
            raise InputError("classify supports points, lines, and planes against space curves")
        subject = {"space": linspace_to_json(L)}
    else:
        raise InputError("classify needs 'space' or 'normal'")
    return {"variety": X.to_json(), **subject, "classification": c.to_json()}


def cli_atlas(job, args):
    X = job_variety(job)
    a = job.get("atlas", {})
    if a.get("glue"):
        if job.get("k", 2) != 2 or X.kind != HYPERSURFACE:
            raise InputError("chart gluing is defined for line atlases of hypersurfaces")
        s = job.get("sampling", {})
        A1 = build_atlas(_atlas_config(job, X, mode="chart1", model="line"))
        A2 = build_atlas(_atlas_config(job, X, mode="chart2", model="line",
                                       samples=a.get("glue_samples", max(1, s.get("count", 2000) // 4))))
        before = A1.region_count
        A1, rep = glue_charts(A1, A2, X)
        out = A1.to_json()
        out["glue"] = {"chart1_regions_before": before, "chart2_regions": A2.region_count,
                       "merged_pairs": [list(p) for p in rep.merged_pairs],
                       "unlocated_chart2_regions": rep.unlocated,
                       "default_ts_regions": rep.default_ts}
        atlas = A1
    else:
        atlas = build_atlas(_atlas_config(job, X))
        out = atlas.to_json()
    atlas.check_soundness()
    out["soundness"] = "ok"
    if a.get("hurwitz_check"):
        out["hurwitz_signs"] = forms.hurwitz_sign_consistency(X, atlas)
    return out


def _cached_form(args, op, X, params, compute):
    cache = FormCache(args.cache_dir, check_rate=args.cache_check)
    text = cache.get_or_compute(op, X.equations, params, lambda: dumps(compute()))
    return json.loads(text), text


def cli_dual(job, args):
    X = job_variety(job)
    if X.kind != HYPERSURFACE or X.n != 3:
        raise InputError("dual needs a plane curve")
    seed = _seed(job)

    def compute():
        D = forms.dual_plane_curve(X.equations[0], seed=seed)
        return {"operation": "dual", "variety": X.to_json(), "form": D.to_json(),
                "monomial_count": D.monomial_count}
    return _cached_form(args, "dual", X, {"seed": seed}, compute)


def cli_chow(job, args):
    X = job_variety(job)
    if X.kind != CI_CURVE:
        raise InputError("chow needs a complete-intersection space curve")
    seed = _seed(job)

    def compute():
        C = forms.chow_form_space_curve(X, seed=seed)
        return {"operation": "chow", "variety": X.to_json(), "form": C.to_json(),
                "term_count": C.term_count}
    return _cached_form(args, "chow", X, {"seed": seed}, compute)


def cli_arrange(job, args):
    a = job.get("arrangement", {})
    if "normals" in a:
        arr = ar.Arrangement(a["normals"])
        l, n = len(arr.normals), arr.n
    else:
        if "l" not in a or "n" not in a:
            raise InputError("arrange needs 'l' and 'n' or explicit 'normals'")
        l, n = a["l"], a["n"]
        arr = None
    out = ar.arrangement_report(l, n)
    out["l"], out["n"] = l, n
    if arr is not None or a.get("brute_force"):
        if arr is None:
            arr = ar.Arrangement.random(l, n, _seed(job))
        bf = ar.brute_force_regions(arr, seed=_seed(job), expected=out["projective_regions"])
        out["brute_force"] = {"normals": [list(h) for h in arr.normals], "regions": bf.regions,
                              "coverage_warning": bf.coverage_warning}
        out["lattice_chi"] = list(ar.lattice_char_poly(arr).coeffs)
    return out


def cli_slice(job, args):
    X = job_variety(job)
    s = job.get("slice", {})
    if "matrix" in s:
        E = linspace_from_json(s["matrix"])
    elif "normal" in s:
        E = [_rat(x) for x in s["normal"]]
    else:
        raise InputError("slice needs 'normal' or 'matrix'")
    rep = cv.slice_consistency_check(X, E, trials=s.get("trials", 500), seed=_seed(job),
                                     atlas_samples=s.get("atlas_samples", 1500))
    return rep.to_json()


def cli_convexity(job, args):
    X = job_variety(job)
    c = job.get("convexity", {})
    k = job.get("k", X.n - 1 if X.kind == HYPERSURFACE else 3)
    atlas = build_atlas(_atlas_config(job, X, k=k))
    ids = c.get("regions", "avoidant")
    if ids == "avoidant":
        ids = [r.id for r in atlas.regions if r.verdict == cl.Verdict.AVOIDANT]
    for i in ids:
        if not 0 <= i < atlas.region_count:
            raise InputError(f"no region {i}")
    trials, chart, seed = c.get("trials", 200), c.get("chart", "real_point"), _seed(job)
    reports = [cv.test_region_convexity(atlas, i, trials, seed, chart=chart).to_json() for i in ids]
    out = {"variety": X.to_json(), "region_count": atlas.region_count,
           "avoidant_region_count": atlas.avoidant_region_count, "regions": reports}
    if c.get("union") and len(ids) > 1:
        out["union"] = cv.test_region_convexity(atlas, ids, trials, seed, chart=chart).to_json()
    return out


def cli_plot(job, args):
    X = job_variety(job)
    p = job.get("plot", {})
    bounds = tuple(_rat(x) for x in p.get("bounds", [-5, 5, -5, 5]))
    R = pl.classify_dual_chart(X, p.get("width", 600), p.get("height", 600), bounds)
    return pl.raster_to_svg(R, title=X.name or "dual chart")


COMMANDS = {
    "classify": cli_classify,
    "atlas": cli_atlas,
    "dual": cli_dual,
    "chow": cli_chow,
    "arrange": cli_arrange,
    "slice": cli_slice,
    "convexity": cli_convexity,
    "plot": cli_plot,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="avoidance", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("config", nargs="?", help="job JSON file, or - for stdin")
        p.add_argument("--json", help="inline job JSON")
        p.add_argument("--named", help="use a named variety (%s)" % ", ".join(catalog.NAMED))
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--cache-dir", help="form cache directory (default: $AVOIDANCE_CACHE_DIR)")
        p.add_argument("--cache-check", type=float, default=0.0,
                       help="probability of recomputing a cache hit to compare")
    return ap


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        job = load_job(args)
        result = COMMANDS[args.command](job, args)
        if isinstance(result, tuple):
            text = result[1]
        elif isinstance(result, str):
            text = result
        else:
            text = dumps(_plain(result))
    except InputError as e:
        print(f"input error: {e}", file=stderr)
        return 2
    except (ArithmeticError, RuntimeError, ValueError) as e:
        print(f"computational failure: {type(e).__name__}: {e}", file=stderr)
        return 3
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
