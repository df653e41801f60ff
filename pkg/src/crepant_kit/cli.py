"""Command line entry point ``crepant-kit``."""

from __future__ import annotations

import argparse
import json
import sys

from .constants import load_epsilon_series, epsilon_eval
from .orbifold import NonGorensteinError, WpsStack, cr_dimensions, sectors
from .toric import FanError, P1344_RESOLUTION_RAYS, is_crepant, is_smooth, singular_report, stellar_subdivide, wps_fan
from .verifier import emit_report, verify
from .verifier import _jsonable


def _weights(text):
    try:
        w = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad weights {text!r}") from None
    if not w or any(x <= 0 for x in w):
        raise argparse.ArgumentTypeError("weights must be positive integers")
    return w


def _pair(text):
    a, sep, b = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected ROW:COL, got {text!r}")
    return a, b


def _cmd_verify(args):
    epsilon = args.epsilon
    if args.epsilon_coeffs:
        series = load_epsilon_series(args.epsilon_coeffs)
        # truncated series at c4 = 1
        epsilon = str(epsilon_eval(series, 1))
    table = None
    if args.perturb_product:
        from .galgebra import QUANTUM_TABLE

        table = {k: dict(v) for k, v in QUANTUM_TABLE.items()}
        for prod, comp in args.perturb_product:
            key = tuple(prod.split("*"))
            entry = table[key if key in table else key[::-1]]
            entry[comp] = -entry[comp] if comp in entry else 1
    cases = ["plus-i", "minus-i"] if args.case == "both" else [args.case]
    reports = [
        verify(case, epsilon, args.branch, args.digits, args.data_dir, args.perturb_xi, table, args.timing)
        for case in cases
    ]
    print(emit_report(reports, args.format))
    return 0 if all(r.exit_code == 0 for r in reports) else 1


def _fan_doc(fan):
    return {
        "rays": {n: list(r) for n, r in zip(fan.names, fan.rays)},
        "cones": [list(fan.cone_names(c)) for c in fan.cones],
        "smooth": is_smooth(fan)[0],
        "singular": [{"cone": list(fan.cone_names(c)), "index": i} for c, i in singular_report(fan)],
    }


def _cmd_fan(args):
    try:
        fan = wps_fan(args.weights)
    except FanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    doc = {"weights": args.weights, "fan": _fan_doc(fan)}
    if args.resolve:
        if args.weights != [1, 3, 4, 4]:
            print("error: --resolve is only available for weights 1,3,4,4", file=sys.stderr)
            return 2
        refined = fan
        for name, ray in P1344_RESOLUTION_RAYS:
            refined = stellar_subdivide(refined, ray, name)
        ok, cert = is_crepant(fan, refined)
        doc["resolution"] = _fan_doc(refined)
        doc["resolution"]["crepant"] = ok
        doc["resolution"]["certificate"] = cert
    if args.format == "json":
        print(json.dumps(_jsonable(doc), indent=2))
    else:
        _print_fan_text(doc)
    return 0


def _print_fan_text(doc):
    for key in ("fan", "resolution"):
        if key not in doc:
            continue
        f = doc[key]
        print(f"{key}: {len(f['rays'])} rays, {len(f['cones'])} maximal cones, smooth={f['smooth']}")
        for n, r in f["rays"].items():
            print(f"  {n} = {tuple(r)}")
        for s in f["singular"]:
            print(f"  singular cone <{', '.join(s['cone'])}> index {s['index']}")
        if "certificate" in f:
            print(f"  crepant={f['crepant']}")
            for n, c in f["certificate"].items():
                terms = " + ".join(f"{v}*{g}" for g, v in c["coefficients"].items())
                print(f"  {n} = {terms}  (sum {c['sum']})")


def _cmd_cr(args):
    stack = WpsStack(tuple(args.weights))
    secs = sectors(stack)
    doc = {
        "weights": args.weights,
        "sectors": [
            {"gamma": str(s.gamma), "fixed_indices": list(s.fixed_indices), "sector_weights": list(s.sector_weights),
             "age": str(s.age)}
            for s in secs
        ],
    }
    try:
        dims = cr_dimensions(stack)
        doc["dimensions"] = {str(k): v for k, v in dims.items()}
        doc["total"] = sum(dims.values())
    except NonGorensteinError as exc:
        doc["error"] = str(exc)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        for s in doc["sectors"]:
            print(f"gamma={s['gamma']:>4}  I={s['fixed_indices']}  P{tuple(s['sector_weights'])}  age={s['age']}")
        if "dimensions" in doc:
            print("dimensions: " + ", ".join(f"H^{k}: {v}" for k, v in doc["dimensions"].items())
                  + f"  (total {doc['total']})")
        else:
            print(f"error: {doc['error']}")
    return 0 if "error" not in doc else 1


def build_parser():
    p = argparse.ArgumentParser(prog="crepant-kit", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run every check for the P(1,3,4,4) correspondence")
    v.add_argument("--case", choices=["plus-i", "minus-i", "both"], default="both")
    v.add_argument("--epsilon", default="f1", help="'f1' (default) or a literal such as 1, i, 2, 0.5")
    v.add_argument("--branch", type=int, choices=[0, 1, 2], default=0)
    v.add_argument("--digits", type=int, default=30)
    v.add_argument("--format", "--report", dest="format", choices=["json", "text"], default="text")
    v.add_argument("--epsilon-coeffs", metavar="FILE", help="lines 'a N_a'; epsilon = truncated series at q = 1")
    v.add_argument("--data-dir", metavar="DIR", help="directory with replacement .ring files")
    v.add_argument("--perturb-xi", metavar="ROW:COL", type=_pair, action="append",
                   help="negate one entry of Xi (negative control)")
    v.add_argument("--perturb-product", metavar="A*B:COMP", type=_pair, action="append",
                   help="negate one coefficient of the quantum product table (negative control)")
    v.add_argument("--timing", action="store_true", help="include wall time (reports are no longer byte-identical)")
    v.set_defaults(func=_cmd_verify)

    f = sub.add_parser("fan", help="fan of a weighted projective space")
    f.add_argument("--weights", type=_weights, required=True)
    f.add_argument("--resolve", action="store_true")
    f.add_argument("--format", "--report", dest="format", choices=["json", "text"], default="text")
    f.set_defaults(func=_cmd_fan)

    c = sub.add_parser("cr", help="twisted sectors and Chen-Ruan Betti numbers")
    c.add_argument("--weights", type=_weights, required=True)
    c.add_argument("--format", "--report", dest="format", choices=["json", "text"], default="text")
    c.set_defaults(func=_cmd_cr)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "digits", 30) < 15:
        print("error: --digits must be at least 15", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
