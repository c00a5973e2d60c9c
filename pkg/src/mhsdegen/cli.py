"""Command-line front end.  Each subcommand adapts one library operation.

Exit codes: 0 success, 2 validation error, 3 unsupported depth.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra.matrix import Matrix
from .algebra.scalars import format_scalar
from .asymptotics.formulas import (
    AsymptoticsError,
    height_asymptotics,
    k2_regulator_asymptotics,
    parse_divisor,
)
from .gallery import examples
from .hodge.data import MhsPoint, UnsupportedDepth, ValidationError, weight_filtration_from_json
from .hodge.mhs import delta_of, spl_W, x_gr
from .hodge.rmf import relative_monodromy_filtration, verify_rmf
from .hodge.splitting import splits_WN, splits_WN_pencil
from .ratio.classify import NoLimit, classify_limit, path_from_json
from .ratio.monoid import FsMonoid, MonoidError
from .ratio.ratio import (
    LexValuation,
    RatioError,
    RatioPoint,
    chart_Nn,
    chart_Nn_inverse,
    format_ext,
    ratio_lift_valuation,
    valuation_to_ratio,
)
from .sl2 import nocks
from .sl2.orbit import (
    diamond_point,
    is_mild,
    orbit_from_json,
    orbit_filtration,
    probe_delta_convergence,
    r1eq_battery,
    sl2_limit,
)

SCHEMA = "1"


class InputError(ValueError):
    pass


# helpers


def _filt(F):
    if hasattr(F, "lo") and not hasattr(F, "weights"):
        rng = range(F.lo, F.hi + 1)
    else:
        rng = F.weights()
    return {str(k): [[format_scalar(x) for x in v] for v in F[k].basis] for k in rng}


def _mat(M):
    return M.to_strings()


def _action(M, names=None):
    """{"e_j": "c*e_i+..."} for the nonzero columns of M."""
    n = M.ncols
    names = names or [f"e{j + 1}" for j in range(n)]
    out = {}
    for j in range(n):
        terms = [(M.rows[i][j], names[i]) for i in range(M.nrows) if M.rows[i][j] != 0]
        if terms:
            out[names[j]] = "+".join(f"{format_scalar(c)}*{e}" for c, e in terms).replace("+-", "-")
    return out


def _field(obj, key, where="input"):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    return obj[key]


def _frac(x, name):
    try:
        return Fraction(str(x))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"field {name!r}: not a rational number: {x!r}") from None


def _load(args):
    if args.json is not None:
        text = args.json
    elif args.input is None:
        raise InputError("this subcommand needs --input FILE|- or --json TEXT")
    elif args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise InputError(f"malformed JSON at line {ex.lineno} column {ex.colno}: {ex.msg}") from None


def _point_from(obj):
    """MhsPoint, moved to exp(i sum y_j N_j) F when "nilpotents" and "y" are given."""
    x = MhsPoint.from_json(obj)
    if "y" in obj:
        Ns = [Matrix.parse(m) for m in _field(obj, "nilpotents")]
        ys = obj["y"] if isinstance(obj["y"], list) else [obj["y"]]
        if len(ys) != len(Ns):
            raise InputError("field 'y': need one value per nilpotent")
        ys = [_frac(y, "y") for y in ys]
        b = x.data.basis
        Fc = orbit_filtration([b.op_to(N) for N in Ns], b.filt_to(x.F), ys)
        x = MhsPoint(x.data, b.filt_from(Fc))
    return x


# subcommands


def cmd_rmf(args, obj):
    W, basis = weight_filtration_from_json(obj)
    N = Matrix.parse(_field(obj, "N"))
    M = relative_monodromy_filtration(N, W, basis)
    return {"M": _filt(M), "axioms_hold": verify_rmf(N, W, M, basis)}


def cmd_delta(args, obj):
    x = _point_from(obj)
    s_prime, d = delta_of(x)
    s = spl_W(x)
    return {"delta": _mat(d), "delta_action": _action(d), "spl_W": _mat(s), "s_prime": _mat(s_prime), "x_gr": _filt(x_gr(x))}


def cmd_split_test(args, obj):
    W, basis = weight_filtration_from_json(obj)
    r = splits_WN(W, Matrix.parse(_field(obj, "N")), basis)
    out = {"splits": r.splits}
    if r.witness is not None:
        out["witness"] = _mat(r.witness)
    return out


def cmd_pencil_split(args, obj):
    W, basis = weight_filtration_from_json(obj)
    Ns = [Matrix.parse(m) for m in _field(obj, "nilpotents")]
    r = splits_WN_pencil(W, Ns, basis, seed=args.seed)
    return {
        "splits_all_t": r.splits_all_t,
        "status": r.status,
        "exceptional_t": [str(t) for t in r.exceptional_t],
        "failing_t": [[str(x) for x in t] if isinstance(t, list) else str(t) for t in r.failing_t],
        "common_splitting": r.common_splitting,
    }


def cmd_validate_orbit(args, obj):
    orbit = orbit_from_json(obj)
    return {"valid": True, "n": orbit.n, "diagnostics": _jsonable(orbit.diagnostics)}


def cmd_sl2_limit(args, obj):
    orbit = orbit_from_json(obj)
    return sl2_limit(orbit).to_json(orbit.basis)


def cmd_mild(args, obj):
    r = is_mild(orbit_from_json(obj), seed=args.seed)
    return {"mild": r.mild, "status": r.status, "detail": _jsonable(r.detail)}


def cmd_diamond(args, obj):
    p = diamond_point(orbit_from_json(obj))
    return {
        "delta": _mat(p.delta),
        "delta0": _mat(p.delta0),
        "spl": _mat(p.s),
        "checks": p.checks,
        "sl2_limit": p.limit.to_json(None),
    }


def cmd_probe(args, obj):
    r = probe_delta_convergence(orbit_from_json(obj), K=args.grid_depth, tol=args.tol)
    return r.to_json()


def cmd_r1eq(args, obj):
    return r1eq_battery(orbit_from_json(obj), K=args.grid_depth, tol=args.tol).to_json()


def cmd_nocks(args, obj):
    return nocks.nocks_family(args.m, depth=args.grid_depth if args.grid_depth != 20 else 8).to_json()


def cmd_ratio(args, obj):
    monoid = FsMonoid.from_json(_field(obj, "monoid"))
    if args.action == "to-chart":
        p = RatioPoint.from_json(monoid, _field(obj, "point"))
        return {"t": [format_ext(x) for x in chart_Nn(p, _field(obj, "perm"))]}
    if args.action == "from-chart":
        p = chart_Nn_inverse(monoid, _field(obj, "perm"), [_frac(x, "t") for x in _field(obj, "t")])
        return {"point": p.to_json()}
    if args.action == "lift":
        p = RatioPoint.from_json(monoid, _field(obj, "point"))
        return {"valuation": ratio_lift_valuation(p).to_json()}
    V = LexValuation(monoid, [[_frac(x, "functionals") for x in lam] for lam in _field(_field(obj, "valuation"), "functionals")])
    return {"point": valuation_to_ratio(V).to_json()}


def cmd_classify_limit(args, obj):
    r, p, s = classify_limit(path_from_json(obj))
    return {"S_colon": r.to_json(), "S_val": p.to_json(), "S_bracket_val": s.to_json()}


def _example(args, which):
    a, b = _frac(args.a, "a"), _frac(args.b, "b")
    mod = "III" if which == 3 else "IV"
    tags = examples.III_TAGS if which == 3 else examples.IV_TAGS
    if args.emit == "csv":
        spaces = [args.space] if args.space else [t for t in tags if not (which == 4 and t == "diamond" and a != 0)]
        ys = [Fraction(k * k) for k in range(1, args.grid_depth + 1)]
        return examples.trajectory_csv(mod, a, b, spaces, ys)
    if args.limit:
        fn = examples.example3_limit if which == 3 else examples.example4_limit
        spaces = [args.space] if args.space else list(tags)
        return {"a": str(a), "b": str(b), "limits": {sp: fn(a, b, sp).to_json() for sp in spaces}}
    if args.y is None:
        raise InputError("give --y Y for a point or --limit for the t -> 0 limit")
    fn = examples.example3_point if which == 3 else examples.example4_point
    pts = fn(a, b, _frac(args.y, "y"))
    if args.space:
        if args.space not in pts:
            raise InputError(f"space tag {args.space!r} not available here")
        pts = {args.space: pts[args.space]}
    return {"a": str(a), "b": str(b), "y": str(_frac(args.y, "y")), "points": _jsonable(pts)}


def cmd_example3(args, obj):
    return _example(args, 3)


def cmd_example4(args, obj):
    return _example(args, 4)


def cmd_regulator(args, obj):
    alpha = parse_divisor(_field(obj, "alpha"))
    beta = parse_divisor(_field(obj, "beta"))
    return k2_regulator_asymptotics(alpha, beta, with_b=obj.get("with_b")).to_json()


def cmd_height(args, obj):
    Y = parse_divisor(_field(obj, "Y"))
    Z = parse_divisor(_field(obj, "Z"))
    return height_asymptotics(Y, Z, with_b=obj.get("with_b")).to_json()


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, Matrix):
        return _mat(x)
    return str(x)


def plot_script(csv_name, ncoords):
    """gnuplot text plotting each coordinate of a trajectory CSV against y."""
    lines = ["set datafile separator ','", "set key autotitle columnhead", "set logscale x", "plot \\"]
    cols = [f"  '{csv_name}' using 1:{4 + k} with linespoints" for k in range(ncoords)]
    return "\n".join(lines + [", \\\n".join(cols)]) + "\n"


# parser

NEEDS_INPUT = {
    "rmf", "delta", "split-test", "pencil-split", "validate-orbit", "sl2-limit", "mild",
    "diamond", "probe", "r1eq", "ratio", "classify-limit", "regulator", "height",
}

COMMANDS = {
    "rmf": cmd_rmf,
    "delta": cmd_delta,
    "split-test": cmd_split_test,
    "pencil-split": cmd_pencil_split,
    "validate-orbit": cmd_validate_orbit,
    "sl2-limit": cmd_sl2_limit,
    "mild": cmd_mild,
    "diamond": cmd_diamond,
    "probe": cmd_probe,
    "r1eq": cmd_r1eq,
    "nocks": cmd_nocks,
    "ratio": cmd_ratio,
    "classify-limit": cmd_classify_limit,
    "example3": cmd_example3,
    "example4": cmd_example4,
    "regulator": cmd_regulator,
    "height": cmd_height,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--input", metavar="FILE|-", help="JSON input file, or - for stdin")
    common.add_argument("--json", metavar="TEXT", help="inline JSON input")
    common.add_argument("--emit", choices=("json", "csv"), default="json")
    common.add_argument("--grid-depth", type=int, default=20, metavar="K", help="samples along trajectories (default 20)")
    common.add_argument("--tol", type=float, default=1e-8, help="numeric tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    p = _Parser(prog="mhsdegen", description="Degenerations of mixed Hodge structures: exact computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "nocks":
            sp.add_argument("--m", type=int, required=True)
        elif name == "ratio":
            sp.add_argument("action", choices=("to-chart", "from-chart", "lift", "push"))
        elif name in ("example3", "example4"):
            sp.add_argument("--a", required=True)
            sp.add_argument("--b", required=True)
            sp.add_argument("--y")
            sp.add_argument("--space")
            sp.add_argument("--limit", action="store_true")
            sp.add_argument("--plot-script", metavar="FILE", help="also write a gnuplot script for the CSV")
    return p


def _dump(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        obj = _load(args) if args.command in NEEDS_INPUT else None
        if args.emit == "csv" and args.command not in ("example3", "example4"):
            raise InputError("--emit csv is available for example3 and example4 only")
        result = COMMANDS[args.command](args, obj)
        if isinstance(result, str):
            out.write(result)
            if getattr(args, "plot_script", None):
                k = 5 if args.command == "example3" else 7
                with open(args.plot_script, "w", encoding="utf-8") as fh:
                    fh.write(plot_script("trajectory.csv", k))
        else:
            doc = {"schema": SCHEMA, "command": args.command, "result": result}
            out.write(_dump(doc) + "\n")
        return 0
    except UnsupportedDepth as ex:
        err.write(_dump({"schema": SCHEMA, "error": "unsupported-depth", "detail": str(ex)}) + "\n")
        return 3
    except KeyError as ex:
        err.write(_dump({"schema": SCHEMA, "error": "validation", "detail": f"missing field {ex.args[0]!r}"}) + "\n")
        return 2
    except (InputError, ValidationError, AsymptoticsError, RatioError, MonoidError, NoLimit, ValueError, TypeError) as ex:
        err.write(_dump({"schema": SCHEMA, "error": "validation", "detail": str(ex)}) + "\n")
        return 2
    except OSError as ex:
        err.write(_dump({"schema": SCHEMA, "error": "validation", "detail": str(ex)}) + "\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
