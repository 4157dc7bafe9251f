"""Command-line interface.

Exit codes: 0 success, 1 invalid input (flags, files, JSON), 2 numeric
failure (unsupported configuration, failed strict check, linear algebra).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, bounds, constructions, gale, gram, optimizer
from .errors import DimensionError, SphereVolError
from .kernels import BACKEND
from .polytope import InscribedPolytope, is_simplicial
from .stationarity import check_property_z

log = logging.getLogger("spherevol")

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2


class InputError(Exception):
    """Bad user input; reported with exit code 1."""


@dataclass
class RunManifest:
    command: str
    flags: dict
    seed: int | None
    version: str = __version__
    backend: str = BACKEND
    wall_time: float = 0.0
    outputs: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "flags": self.flags,
            "seed": self.seed,
            "version": self.version,
            "backend": self.backend,
            "wall_time": self.wall_time,
            "outputs": self.outputs,
        }


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if np.isfinite(x) else None
    return x


def dumps(obj) -> str:
    # json writes floats with repr(), the shortest string that round-trips exactly
    return json.dumps(_jsonable(obj), indent=2, allow_nan=False)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def load_polytope(path: str) -> InscribedPolytope:
    """Parse a polytope document, reporting JSON syntax errors by line and column."""
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(doc, dict) and "best_polytope" in doc.get("result", {}):
        doc = doc["result"]["best_polytope"]
    try:
        return InscribedPolytope.from_dict(doc)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("SPHEREVOL_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"SPHEREVOL_SEED must be an integer, got {env!r}") from exc


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise InputError(f"--{name.replace('_', '-')} is required for family {args.family!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def build_family(args) -> InscribedPolytope:
    fam = args.family
    if fam == "simplex":
        _need(args, "dim")
        return constructions.regular_simplex_polytope(args.dim)
    if fam == "product":
        _need(args, "dims")
        return constructions.orthogonal_simplex_product(_int_list(args.dims))
    if fam == "dplus2":
        _need(args, "dim")
        return constructions.optimal_dplus2(args.dim)
    if fam == "dplus3":
        _need(args, "dim")
        return constructions.optimal_dplus3(args.dim)
    if fam == "cyclic":
        _need(args, "dim", "nverts")
        return constructions.cyclic_trig(args.dim, args.nverts)
    if fam == "cross":
        _need(args, "dim")
        return constructions.cross_polytope(args.dim)
    if fam == "bipyramid":
        if args.base:
            base = load_polytope(args.base)
        else:
            _need(args, "dim")
            base = constructions.regular_simplex_polytope(args.dim - 1)
        return constructions.bipyramid(base)
    if fam == "p4":
        return constructions.p4()
    if fam == "p6":
        return constructions.p6()
    if fam == "remark54":
        return constructions.remark54_3polytope()
    raise InputError(f"unknown family {fam!r}")


def cmd_construct(args) -> dict:
    return build_family(args).to_dict()


def cmd_volume(args) -> dict:
    p = load_polytope(args.polytope)
    return {
        "dim": p.dim,
        "n": p.n,
        "volume": p.volume(),
        "facets": len(p.facets),
        "facet_sizes": sorted(len(f.vertex_indices) for f in p.facets),
        "simplicial": is_simplicial(p),
        "simplices": len(p.complex),
    }


def cmd_check_z(args) -> dict:
    p = load_polytope(args.polytope)
    return check_property_z(p, args.tol).to_dict()


def cmd_gale(args) -> dict:
    p = load_polytope(args.polytope)
    diag = gale.gale_transform(p)
    out = {"diagram": diag.to_dict(), "n": p.n, "dim": p.dim}
    if diag.codim <= 2:
        valid, witness = gale.validate_diagram(diag)
        pred = gale.diagram_predicates(diag)
        out["valid"] = valid
        out["witness"] = witness
        out["predicates"] = {"simplicial": pred.simplicial, "pyramid": pred.pyramid}
    else:
        out["note"] = "validation and predicates are implemented for codim <= 2"
    if args.contract:
        if diag.codim in (1, 2):
            c = gale.contract_diagram(diag)
            out["contracted"] = {**c.to_dict(), "contracted": c.contracted, "note": c.note,
                                 "multiplicities": c.multiplicity_counts()}
        else:
            out["contracted"] = None
    return out


def cmd_optimize(args, seed: int) -> dict:
    try:
        config = optimizer.OptimizerConfig(args.dim, args.nverts, starts=args.starts,
                                           max_iters=args.max_iter, alpha=args.alpha,
                                           move_tol=args.tol, seed=seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return optimizer.ascend(config, workers=args.workers).to_dict()


def cmd_gram_solve(args) -> dict:
    if args.case == "d4":
        return {"case": "d4", "n": 7, "solutions": [s.to_dict() for s in gram.solve_symmetric_d4()]}
    return {"case": "d6", "n": 9, **gram.verify_symmetric_d6()}


def cmd_compare(args, seed: int) -> dict:
    try:
        return optimizer.compare_even_d(args.dim, starts=args.starts, seed=seed, max_iters=args.max_iter)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


TABLE_COLUMNS = ["d", "n", "family", "closed_form_value", "constructed_volume", "residual",
                 "optimizer_best", "label"]


def table_rows(dmax: int, starts: int = 0, seed: int = 0, opt_dmax: int = 4):
    """Closed forms next to the volumes of their constructions (and optionally the optimizer)."""
    rows = []

    def add(d, n, family, closed, poly, label):
        built = poly.volume()
        best = None
        if starts and d <= opt_dmax:
            best = optimizer.ascend(optimizer.OptimizerConfig(d, n, starts=starts, seed=seed)).best_volume
        rows.append({
            "d": d, "n": n, "family": family,
            "closed_form_value": closed, "constructed_volume": built,
            "residual": None if closed is None else abs(built - closed),
            "optimizer_best": best, "label": label,
        })

    for d in range(2, dmax + 1):
        add(d, d + 1, "simplex", bounds.v_simplex(d), constructions.regular_simplex_polytope(d),
            "proven optimum")
        add(d, d + 2, "dplus2", bounds.v_dplus2(d), constructions.optimal_dplus2(d), "proven optimum")
        if d == 2:
            add(2, 5, "polygon", bounds.regular_polygon_area(5), constructions.cyclic_trig(2, 5),
                "proven optimum")
            continue
        label = "proven optimum" if d % 2 else "conjectural global / certified non-cyclic local"
        add(d, d + 3, "dplus3", bounds.v_dplus3(d), constructions.optimal_dplus3(d), label)
        if d % 2 == 0:
            closed = {4: bounds.c47_volume(), 6: bounds.c69_volume()}.get(d)
            note = "reference closed form" if closed is not None else "no closed form"
            if d == 6:
                note = "reference closed form (disagrees with construction)"
            add(d, d + 3, "cyclic", closed, constructions.cyclic_trig(d, d + 3), note)
    return rows


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, TABLE_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if r[k] is None else repr(r[k]) if isinstance(r[k], float) else r[k])
                    for k in TABLE_COLUMNS})
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spherevol", description=__doc__.splitlines()[0] if __doc__ else None)
    ap.add_argument("--version", action="version", version=f"spherevol {__version__} ({BACKEND} kernels)")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_out(p):
        p.add_argument("--out", help="write output to this file instead of stdout")
        return p

    p = with_out(sub.add_parser("construct", help="build a named polytope"))
    p.add_argument("family", choices=["simplex", "product", "dplus2", "dplus3", "cyclic", "cross",
                                      "bipyramid", "p4", "p6", "remark54"])
    p.add_argument("--dim", type=int)
    p.add_argument("--nverts", type=int)
    p.add_argument("--dims", help="factor dimensions for 'product', e.g. 2,2,2")
    p.add_argument("--base", help="polytope file used as the base of 'bipyramid'")

    p = with_out(sub.add_parser("volume", help="volume and facet summary"))
    p.add_argument("polytope", help="polytope JSON file, or - for stdin")

    p = with_out(sub.add_parser("check-z", help="first-order stationarity report"))
    p.add_argument("polytope")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--strict", action="store_true", help="exit 2 when the check fails")

    p = with_out(sub.add_parser("gale", help="Gale diagram and predicates"))
    p.add_argument("polytope")
    p.add_argument("--contract", action="store_true")

    p = with_out(sub.add_parser("optimize", help="multi-start volume ascent"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--nverts", type=int, required=True)
    p.add_argument("--starts", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-10, help="vertex displacement tolerance")
    p.add_argument("--workers", type=int, default=1)

    p = with_out(sub.add_parser("gram-solve", help="symmetric circulant Gram solutions"))
    p.add_argument("--case", choices=["d4", "d6"], required=True)

    p = with_out(sub.add_parser("table", help="CSV of closed forms vs constructions"))
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--starts", type=int, default=0, help="also run the optimizer (d <= --opt-dmax)")
    p.add_argument("--opt-dmax", type=int, default=4)
    p.add_argument("--seed", type=int)

    p = with_out(sub.add_parser("compare", help="cyclic vs product vs optimizer for even d"))
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--starts", type=int, default=20)
    p.add_argument("--seed", type=int)
    p.add_argument("--max-iter", type=int, default=2000)
    return ap


def _flags(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("command", "out", "verbose")}


def run(args) -> tuple[str, int]:
    cmd = args.command
    if cmd == "construct":
        return dumps(cmd_construct(args)), EXIT_OK
    if cmd == "volume":
        return dumps(cmd_volume(args)), EXIT_OK
    if cmd == "check-z":
        rep = cmd_check_z(args)
        code = EXIT_NUMERIC if args.strict and rep["verdict"] != "satisfies" else EXIT_OK
        return dumps(rep), code
    if cmd == "gale":
        return dumps(cmd_gale(args)), EXIT_OK
    if cmd == "table":
        if args.dmax < 2:
            raise InputError("--dmax must be >= 2")
        return format_csv(table_rows(args.dmax, args.starts, _seed(args), args.opt_dmax)), EXIT_OK

    seed = _seed(args) if cmd in ("optimize", "compare") else None
    t0 = time.perf_counter()
    if cmd == "optimize":
        result = cmd_optimize(args, seed)
    elif cmd == "gram-solve":
        result = cmd_gram_solve(args)
    else:
        result = cmd_compare(args, seed)
    manifest = RunManifest(cmd, _flags(args), seed, wall_time=time.perf_counter() - t0,
                           outputs={"file": args.out} if args.out else {"inline": True})
    return dumps({"manifest": manifest.to_dict(), "result": result}), EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are invalid input here
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        text, code = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (SphereVolError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
