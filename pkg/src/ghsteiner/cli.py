"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 size/budget limit or solver
failure, 3 a verification check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import suites
from .embed import embed_into_gh, realize_filling
from .errors import GeneratorExhausted, InvalidInput, LimitExceeded, LpNumericalFailure, VerificationFailed
from .filling import mf, verify_filling_characterization
from .gh import DEFAULT_BUDGET, gh_distance, gh_lower_bound
from .metric import cloud_from_json, delta, nu, space_from_csv, space_from_json
from .ratios import ratios_linf, simplex_experiment
from .steiner import smt_linf
from .trees import mst

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_LIMIT = 2
EXIT_VERIFY = 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc


def load_space(path: str, fmt: str | None = None):
    fmt = fmt or ("csv" if path.lower().endswith(".csv") else "json")
    text = _read(path)
    return space_from_csv(text) if fmt == "csv" else space_from_json(text)


def load_cloud(path: str):
    return cloud_from_json(_read(path))


def _emit(payload, out) -> None:
    out.write(json.dumps(payload, indent=2))
    out.write("\n")


def _g12(x: float) -> float:
    return float(f"{x:.12g}")


def cmd_validate(args, out):
    X = load_space(args.input, args.format)
    _emit({"valid": True, "points": list(X.labels), "n": X.n}, out)
    return EXIT_OK


def cmd_delta(args, out):
    rep = delta(load_space(args.input, args.format))
    _emit({"delta": rep.delta, "is_generic": rep.is_generic, "witness": rep.witness}, out)
    return EXIT_OK


def cmd_nu(args, out):
    X = load_space(args.input, args.format)
    vec, order = nu(X)
    _emit(
        {"nu": vec.tolist(), "pair_order": [[X.labels[i], X.labels[j]] for i, j in order], "dim": len(vec)},
        out,
    )
    return EXIT_OK


def cmd_gh_dist(args, out):
    A = load_space(args.a, args.format)
    B = load_space(args.b, args.format)
    d = gh_distance(A, B, budget=args.budget)
    _emit({"gh_distance": _g12(d), "lower_bound": _g12(gh_lower_bound(A, B))}, out)
    return EXIT_OK


def cmd_mst(args, out):
    T = mst(load_space(args.input, args.format))
    _emit({"length": T.length, "tree": T.to_dict()}, out)
    return EXIT_OK


def cmd_smt(args, out):
    sol = smt_linf(load_cloud(args.input), tol=args.tol)
    _emit({"length": sol.length, "tree": sol.to_dict()}, out)
    return EXIT_OK


def cmd_mf(args, out):
    X = load_space(args.input, args.format)
    sol = mf(X, tol=args.tol)
    verdict = verify_filling_characterization(sol, X, sol.length)
    _emit(
        {
            "length": sol.length,
            "tree": sol.to_dict(),
            "tight_pairs": [list(p) for p in sol.tight_pairs],
            "characterization": {"ok": verdict.ok, "mst_of_vertices": verdict.mst_of_vertices, "detail": verdict.detail},
        },
        out,
    )
    return EXIT_OK if verdict.ok else EXIT_VERIFY


def cmd_embed(args, out):
    rec = embed_into_gh(load_space(args.input, args.format), args.seed)
    _emit(rec.to_dict(), out)
    return EXIT_OK


def cmd_realize(args, out):
    X = load_space(args.input, args.format)
    real = realize_filling(X, args.seed, budget=args.budget)
    ok = abs(real.length - real.filling.length) <= 1e-7
    payload = real.to_dict()
    payload["verified"] = ok
    _emit(payload, out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_ratios(args, out):
    _emit(ratios_linf(load_cloud(args.input)).to_dict(), out)
    return EXIT_OK


def cmd_simplex(args, out):
    rows = simplex_experiment(args.n_max)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "mf", "mst", "ratio", "exact_ratio", "source"])
        for r in rows:
            d = r.to_dict()
            w.writerow([r.n, repr(r.mf), repr(r.mst), repr(r.ratio), d["exact_ratio"], r.source])
        out.write(buf.getvalue())
    else:
        _emit({"rows": [r.to_dict() for r in rows]}, out)
    return EXIT_OK


def cmd_verify(args, out):
    target = args.target
    runs = []
    if target in ("theorem1", "all"):
        runs.append(suites.theorem1_suite(args.n, args.m, args.trials, args.seed))
    if target in ("linf-filling", "all"):
        runs.append(suites.linf_filling_suite(max(args.trials, 1), args.seed))
    if target in ("local-isometry", "all"):
        runs.append(suites.local_isometry_suite(args.trials, max(1, args.trials // 5), args.seed))
    if target in ("realization", "all"):
        runs.append(suites.realization_suite(args.seed))
    if target in ("simplex", "all"):
        runs.append(suites.simplex_suite())
    if target in ("corpus", "all"):
        runs.append(suites.correspondence_suite())
        runs.append(suites.gh_axioms_suite())
    runs.append(suites.chain_suite(runs))
    passed = all(r.passed for r in runs)
    payload = {"target": target, "seed": args.seed, "passed": passed, "suites": [r.to_dict() for r in runs]}
    for r in payload["suites"]:
        r.pop("elapsed")  # keep output byte-identical across runs
    _emit(payload, out)
    return EXIT_OK if passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ghsteiner", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def space_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--input", required=True)
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.set_defaults(func=func)
        return sp

    space_cmd("validate", cmd_validate, "validate a metric space file")
    space_cmd("delta", cmd_delta, "genericity margin")
    space_cmd("nu", cmd_nu, "sorted half-distance vector")
    space_cmd("mst", cmd_mst, "minimal spanning tree")
    sp = space_cmd("mf", cmd_mf, "minimal filling")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp = space_cmd("embed", cmd_embed, "isometric embedding into GH space")
    sp.add_argument("--seed", type=int, default=0)
    sp = space_cmd("realize", cmd_realize, "realize a minimal filling in GH space")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("gh-dist", help="exact Gromov-Hausdorff distance")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--format", choices=["json", "csv"], default=None)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_gh_dist)

    sp = sub.add_parser("smt", help="Steiner minimal tree in l-infinity")
    sp.add_argument("--input", required=True)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_smt)

    sp = sub.add_parser("ratios", help="sr, sgr, ssr of an l-infinity terminal set")
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_ratios)

    sp = sub.add_parser("simplex-experiment", help="mf/mst table for equilateral spaces")
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(func=cmd_simplex)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("target", choices=["theorem1", "realization", "linf-filling", "local-isometry", "simplex", "corpus", "all"])
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--trials", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("tol", "budget"):
        if getattr(args, name, 1) <= 0:
            err.write(f"error: --{name} must be positive\n")
            return EXIT_INPUT
    try:
        return args.func(args, out)
    except InvalidInput as exc:
        err.write(f"invalid input: {exc}\n")
        return EXIT_INPUT
    except (LimitExceeded, LpNumericalFailure, GeneratorExhausted) as exc:
        err.write(f"limit: {exc}\n")
        return EXIT_LIMIT
    except VerificationFailed as exc:
        err.write(f"verification FAILED: {exc}\n")
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
