"""Command-line interface.

Exit codes: 0 success or affirmative finding, 1 well-formed negative finding,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import constructors as C
from .documents import (
    SCHEMA_VERSION,
    DocumentError,
    RunConfig,
    density_to_dict,
    dump_upb,
    load_document,
)
from .optimize import OBJECTIVES, Axis, grid_scan, make_objective, maximize_from_grid, refine_max
from .states import DensityMatrix, ppt_check, upb_complement_state
from .strength import (
    compare_closed_vs_generic,
    product_pattern,
    sixparam_reference_pattern,
    strength_generic,
    strength_sixparam_closed,
    strength_tri_closed,
    tripartite_reference_pattern,
)
from .verify import check_mutual_orthogonality, is_upb, zero_pattern

log = logging.getLogger("upbstrength")

CONSTRUCTIONS = ("pyramid", "tiles", "sixparam", "genpyr7", "tripartite", "subfamily", "tensor")

#: (x, y) points of the equal-angle tripartite slice used by ``subfamily-report``
SUBFAMILY_POINTS = (
    (-0.554959, 1.0),
    (0.801938, 1.0),
    (0.469, 1.0),
    (-0.5558, 0.9142),
    (-0.8, 0.5),
    (-0.3, 0.2),
    (0.25, 0.75),
    (0.5, 0.0),
    (0.7, 0.4),
    (0.9, 0.9),
)


class UsageError(Exception):
    pass


def _simple_set(name: str) -> C.ProductBasisSet:
    table = {
        "pyramid": C.make_pyramid,
        "tiles": C.make_tiles,
        "sept": lambda: C.make_gen_pyramid7(2),
        "genpyr7-3": lambda: C.make_gen_pyramid7(3),
    }
    if name not in table:
        raise UsageError(f"unknown tensor factor {name!r}; choose from {sorted(table)}")
    return table[name]()


def _floats(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad number list {text!r}") from exc


def _assignments(items: Optional[Sequence[str]]) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError as exc:
            raise UsageError(f"bad value in {item!r}") from exc
    return out


def _config(args) -> RunConfig:
    try:
        return RunConfig(
            tol_zero=args.tol_zero,
            tol_rank=args.tol_rank,
            tol_ppt=args.tol_ppt,
            max_members=args.max_members,
            out_dir=args.out_dir,
            seed=args.seed,
            threads=args.threads,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _out_path(path: Optional[str], cfg: RunConfig) -> Optional[str]:
    if path is None or path == "-":
        return None
    if not os.path.isabs(path) and cfg.out_dir:
        return os.path.join(cfg.out_dir, path)
    return path


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _json(payload: dict, cfg: RunConfig) -> str:
    out = {"schema_version": SCHEMA_VERSION}
    out.update(payload)
    out["config"] = cfg.to_dict()
    return json.dumps(out, indent=2)


# -- construct ---------------------------------------------------------------

def build(name: str, args) -> C.ProductBasisSet:
    if name == "pyramid":
        return C.make_pyramid()
    if name == "tiles":
        return C.make_tiles()
    if name == "sixparam":
        p = C.SixParam(args.theta_a, args.gamma_a, args.phi_a, args.theta_b, args.gamma_b, args.phi_b)
        return C.make_six_param(p)
    if name == "genpyr7":
        return C.make_gen_pyramid7(args.m)
    if name == "tripartite":
        if args.params:
            return C.make_tripartite(C.TriParam.from_sequence(_floats(args.params)))
        t = np.pi / 3
        return C.make_tripartite(C.TriParam.shared(C.TriBlock(t, t, t, t)))
    if name == "subfamily":
        return C.make_subfamily(args.theta, args.alpha)
    if name == "tensor":
        return C.tensor_product_upb(_simple_set(args.left), _simple_set(args.right))
    raise UsageError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")


def cmd_construct(args) -> int:
    cfg = _config(args)
    try:
        S = build(args.name, args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(dump_upb(S, indent=1), _out_path(args.output, cfg))
    return 0


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    cfg = _config(args)
    S = _load_set(args.input)
    try:
        report = is_upb(S, tol=cfg.tol_zero, rank_tol=cfg.tol_rank, max_members=cfg.max_members)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "label": S.label,
        "dims": list(S.dims),
        "n_members": S.n_members,
        "orthogonal": report.orthogonal,
        "unextendible": report.unextendible,
        "is_upb": report.is_upb,
        "violating_pairs": [list(p) for p in report.violating_pairs],
        "zero_pattern": [sorted(list(p) for p in report.pattern.pairs(k)) for k in range(S.n_parties)],
        "method": report.method,
        "search_nodes": report.search_nodes,
        "witness": None,
    }
    if report.witness is not None:
        w = report.witness
        payload["witness"] = {
            "assignment": list(w.assignment),
            "local_vectors": [[[a.real, a.imag] for a in v] for v in w.local_vectors],
            "max_overlap": w.max_overlap,
        }
    print(
        f"{S.label or 'set'}: orthogonal={report.orthogonal} unextendible={report.unextendible}",
        file=sys.stderr,
    )
    _emit(_json(payload, cfg), _out_path(args.output, cfg))
    return 0 if report.is_upb else 1


def _load_set(path: str) -> C.ProductBasisSet:
    try:
        obj = load_document(_read_input(path))
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc
    if not isinstance(obj, C.ProductBasisSet):
        raise UsageError("expected a product-basis document")
    return obj


# -- strength ----------------------------------------------------------------

def _pattern_for(args, S, cfg):
    mode = args.pattern
    if mode == "measure":
        return "measure"
    if mode == "sixparam":
        return sixparam_reference_pattern(cfg.tol_zero)
    if mode == "tripartite":
        return tripartite_reference_pattern(cfg.tol_zero)
    if mode == "product":
        if not args.factors:
            raise UsageError("--pattern product needs --factors LEFT,RIGHT")
        names = args.factors.split(",")
        if len(names) != 2:
            raise UsageError("--factors takes exactly two names")
        A, B = (_simple_set(n.strip()) for n in names)
        return product_pattern(zero_pattern(A, cfg.tol_zero), zero_pattern(B, cfg.tol_zero))
    raise UsageError(f"unknown pattern mode {mode!r}")


def cmd_strength(args) -> int:
    cfg = _config(args)
    S = _load_set(args.input)
    pattern = _pattern_for(args, S, cfg)
    try:
        rep = strength_generic(S, pattern, cfg.tol_zero)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    payload = {
        "label": S.label,
        "value": rep.value,
        "per_party_factors": list(rep.per_party_factors),
        "pattern_source": rep.pattern_source,
        "contributing_pairs": [[[i, j, m] for i, j, m in party] for party in rep.contributing_pairs],
        "closed_form": None,
    }
    if args.closed_form:
        vals = _floats(args.params or "")
        try:
            if args.closed_form == "sixparam":
                if len(vals) != 6:
                    raise UsageError("sixparam closed form needs --params thetaA,gammaA,phiA,thetaB,gammaB,phiB")
                closed = strength_sixparam_closed(C.SixParam(*vals))
            else:
                if len(vals) != 2:
                    raise UsageError("tri closed form needs --params x,y")
                closed = strength_tri_closed(*vals)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        cmp = compare_closed_vs_generic(S, closed, pattern)
        payload["closed_form"] = {
            "id": args.closed_form,
            "value": cmp.closed,
            "abs_diff": cmp.abs_diff,
            "rel_diff": cmp.rel_diff,
            "ratio": cmp.ratio,
        }
    _emit(_json(payload, cfg), _out_path(args.output, cfg))
    return 0


# -- scan / optimize ---------------------------------------------------------

def _axes(specs) -> list:
    if not specs:
        raise UsageError("at least one --axis name:lo:hi:steps is required")
    try:
        return [Axis.parse(s) for s in specs]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _objective_name(name: str) -> str:
    if name not in OBJECTIVES:
        raise UsageError(f"unknown objective {name!r}; choose from {', '.join(sorted(OBJECTIVES))}")
    return name


def cmd_scan(args) -> int:
    cfg = _config(args)
    name = _objective_name(args.objective)
    grid = grid_scan(name, _axes(args.axis), _assignments(args.fix), threads=cfg.threads)
    _emit(grid.to_csv(args.value_name), _out_path(args.out, cfg))
    if grid.failed.any():
        print(f"warning: {int(grid.failed.sum())} grid points failed and were recorded as 0", file=sys.stderr)
    return 0


def _maximum_dict(m) -> dict:
    return {"point": m.point, "value": m.value, "kind": m.kind}


def cmd_optimize(args) -> int:
    cfg = _config(args)
    name = _objective_name(args.objective)
    fixed = _assignments(args.fix)
    bounds = {}
    for b in args.bound or ():
        parts = b.split(":")
        if len(parts) != 3:
            raise UsageError(f"bound {b!r} is not name:lo:hi")
        bounds[parts[0]] = (float(parts[1]), float(parts[2]))
    if args.from_grid:
        grid = grid_scan(name, _axes(args.axis), fixed, threads=cfg.threads)
        res = maximize_from_grid(grid, tol=args.tol, max_iter=args.max_iter)
        starts = "grid"
    else:
        start = _assignments(args.start)
        if not start:
            raise UsageError("give --start name=value (repeatable) or --from-grid")
        objective = make_objective(name, fixed)
        try:
            res = refine_max(objective, start, args.step, args.tol, args.max_iter, bounds)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        starts = start
    payload = {
        "objective": name,
        "fixed": fixed,
        "starts": starts,
        "maxima": [_maximum_dict(m) for m in res.maxima],
        "evaluations": res.evaluations,
        "converged": res.converged,
        "step_final": res.step_final,
    }
    _emit(_json(payload, cfg), _out_path(args.output, cfg))
    return 0


# -- state -------------------------------------------------------------------

def cmd_state(args) -> int:
    cfg = _config(args)
    try:
        obj = load_document(_read_input(args.input))
    except DocumentError as exc:
        raise UsageError(str(exc)) from exc
    if isinstance(obj, C.ProductBasisSet):
        ok, bad = check_mutual_orthogonality(obj, cfg.tol_zero)
        if not ok:
            print(f"members are not mutually orthogonal: {bad}", file=sys.stderr)
            _emit(_json({"label": obj.label, "orthogonal": False, "violating_pairs": bad}, cfg),
                  _out_path(args.output, cfg))
            return 1
        rho = upb_complement_state(obj, cfg.tol_zero)
        label = obj.label
    else:
        rho = obj
        label = "density_matrix"
    k = len(rho.dims)
    cuts = [(p,) for p in range(k)]
    if args.group_cuts and k > 2:
        cuts += [tuple(q for q in range(k) if q != p) for p in range(k)]
    w = rho.eigenvalues()
    ppt = ppt_check(rho, cfg.tol_ppt, cuts)
    payload = {
        "label": label,
        "dims": list(rho.dims),
        "trace": rho.trace,
        "rank": rho.rank(),
        "eigenvalue_min": float(w[0]),
        "eigenvalue_max": float(w[-1]),
        "psd": bool(w[0] >= -cfg.tol_ppt),
        "ppt_cuts": [
            {"parties": list(c), "min_eigenvalue": m, "ppt": m >= -cfg.tol_ppt}
            for c, m in zip(ppt.cuts, ppt.minima)
        ],
        "ppt": ppt.ppt,
    }
    if args.emit_matrix:
        payload["state"] = density_to_dict(rho)
    _emit(_json(payload, cfg), _out_path(args.output, cfg))
    return 0 if ppt.ppt else 1


# -- catalogue / comparison --------------------------------------------------

def cmd_families(args) -> int:
    cfg = _config(args)
    built = [
        {"name": "Pyramid", "size": 5, "space": "C^3 x C^3", "constructible": True},
        {"name": "Tiles", "size": 5, "space": "C^3 x C^3", "constructible": True},
        {"name": "SixParam", "size": 5, "space": "C^3 x C^3", "constructible": True},
        {"name": "Sept / GenPyramid7", "size": 7, "space": "C^3 x C^3 x C^3", "constructible": True},
        {"name": "Tripartite", "size": 7, "space": "C^3 x C^3 x C^3", "constructible": True},
    ]
    catalogue = [dict(e, constructible=False) for e in C.GENERAL_CONSTRUCTIONS]
    _emit(_json({"families": built + catalogue}, cfg), None)
    return 0


def cmd_subfamily_report(args) -> int:
    """Generic strength of the shared-parameter slice next to ``f(x, y)**3``."""
    cfg = _config(args)
    points = SUBFAMILY_POINTS
    if args.points:
        vals = _floats(args.points)
        if len(vals) % 2:
            raise UsageError("--points takes x,y pairs")
        points = tuple(zip(vals[::2], vals[1::2]))
    rows = []
    ref = tripartite_reference_pattern(cfg.tol_zero)
    for x, y in points:
        S = C.make_subfamily(float(np.arccos(x)), float(np.arccos(y)))
        closed = strength_tri_closed(x, y)
        cmp = compare_closed_vs_generic(S, closed, ref)
        rows.append(
            {
                "x": x,
                "y": y,
                "generic": cmp.generic,
                "closed_f_cubed": cmp.closed,
                "ratio": cmp.ratio,
                "rel_diff": cmp.rel_diff,
            }
        )
    _emit(_json({"points": rows}, cfg), _out_path(args.output, cfg))
    return 0


# -- parser ------------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run configuration")
    g.add_argument("--tol-zero", type=float, default=RunConfig.tol_zero)
    g.add_argument("--tol-rank", type=float, default=RunConfig.tol_rank)
    g.add_argument("--tol-ppt", type=float, default=RunConfig.tol_ppt)
    g.add_argument("--max-members", type=int, default=RunConfig.max_members)
    g.add_argument("--out-dir", default=None, help="default output directory (env UPBSTRENGTH_OUTDIR)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="upbstrength", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="emit a product-basis document")
    p.add_argument("name", help=", ".join(CONSTRUCTIONS))
    p.add_argument("-o", "--output")
    p.add_argument("--m", type=int, default=2)
    ta = float(np.arccos(C.PYRAMID_X))
    for flag in ("--theta-a", "--gamma-a", "--theta-b", "--gamma-b"):
        p.add_argument(flag, type=float, default=ta)
    p.add_argument("--phi-a", type=float, default=0.0)
    p.add_argument("--phi-b", type=float, default=0.0)
    p.add_argument("--params", help="21 comma-separated tripartite parameters")
    p.add_argument("--theta", type=float, default=float(np.pi / 3))
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--left", default="pyramid")
    p.add_argument("--right", default="tiles")
    _common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="decide the UPB property")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("strength", help="strength report")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output")
    p.add_argument("--pattern", default="measure", choices=["measure", "sixparam", "tripartite", "product"])
    p.add_argument("--factors", help="LEFT,RIGHT for --pattern product")
    p.add_argument("--closed-form", choices=["sixparam", "tri"])
    p.add_argument("--params", help="closed-form parameters, comma separated")
    _common(p)
    p.set_defaults(func=cmd_strength)

    p = sub.add_parser("scan", help="grid scan to CSV")
    p.add_argument("objective")
    p.add_argument("--axis", action="append", help="name:lo:hi:steps (repeatable)")
    p.add_argument("--fix", action="append", help="name=value (repeatable)")
    p.add_argument("--out", default="-")
    p.add_argument("--value-name", default="f")
    _common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("optimize", help="pattern-search maximization")
    p.add_argument("objective")
    p.add_argument("--start", action="append", help="name=value (repeatable)")
    p.add_argument("--from-grid", action="store_true")
    p.add_argument("--axis", action="append", help="name:lo:hi:steps for --from-grid")
    p.add_argument("--fix", action="append", help="name=value (repeatable)")
    p.add_argument("--bound", action="append", help="name:lo:hi (repeatable)")
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("-o", "--output")
    _common(p)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("state", help="complement state spectrum and PPT")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("-o", "--output")
    p.add_argument("--group-cuts", action="store_true", help="also transpose pairs of parties")
    p.add_argument("--emit-matrix", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("families", help="catalogue of known constructions")
    _common(p)
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("subfamily-report", help="generic strength vs f(x,y)^3 on the tripartite slice")
    p.add_argument("--points", help="x1,y1,x2,y2,...")
    p.add_argument("-o", "--output")
    _common(p)
    p.set_defaults(func=cmd_subfamily_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"upbstrength {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
