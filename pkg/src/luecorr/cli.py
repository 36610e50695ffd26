"""Command-line front end: ``luecorr <verb> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import checks
from .exact import CorrelatorValue, MultiPoly, block_value, format_poly, rat_str, var_index
from .hodge import elsv_combination, hodge_genus0, hodge_rhs
from .oracles import GuardrailError, as_partition, gue_even_oracle, hurwitz_brute, lue_eigenvalue_oracle
from .resolvent import DEFAULT_MARGIN, as_key, connected_correlator
from .topo import hurwitz_table

FORMATS = ("json", "csv", "latex", "plain")
LIST_FLAGS = ("-k", "--keys", "--mu", "--nu")
CHECK_ALL = ("recursions", "projector", "symmetry", "virasoro", "parity", "integrality",
             "fixtures", "factorization", "hodge")


# argument types

def int_list(text: str):
    try:
        vals = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def key_list(text: str):
    vals = int_list(text)
    if 0 in vals:
        raise argparse.ArgumentTypeError("keys must be nonzero")
    return vals


def partition_arg(text: str):
    vals = int_list(text)
    if any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("a partition needs positive parts")
    return tuple(sorted(vals, reverse=True))


def nonneg_int(text: str):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def bindings(text: str):
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise argparse.ArgumentTypeError(f"expected name=value, got {item!r}")
        name, value = (s.strip() for s in item.split("=", 1))
        if name not in ("N", "alpha"):
            raise argparse.ArgumentTypeError(f"unknown variable {name!r} (use N or alpha)")
        try:
            out[name] = Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise argparse.ArgumentTypeError(f"{name}={value!r} is not an exact rational")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="luecorr", description="Exact LUE correlators and monotone Hurwitz numbers.")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("correlator", help="connected correlator <prod tr X^k>_c")
    c.add_argument("-k", "--keys", type=key_list, required=True)
    c.add_argument("--eval", type=bindings, help="N=..,alpha=.. exact substitution")
    c.add_argument("--format", choices=FORMATS, default="json")
    c.add_argument("--margin", type=nonneg_int, default=DEFAULT_MARGIN)

    h = sub.add_parser("hurwitz", help="weighted monotone Hurwitz numbers from the large-N expansion")
    h.add_argument("--flavor", choices=("strict", "weak"), required=True)
    h.add_argument("--mu", type=partition_arg, required=True)
    h.add_argument("--gmax", type=nonneg_int, required=True)
    h.add_argument("--smax", type=nonneg_int)
    h.add_argument("--format", choices=FORMATS, default="json")
    h.add_argument("--margin", type=nonneg_int, default=DEFAULT_MARGIN)

    o = sub.add_parser("oracle", help="brute-force ground truth")
    osub = o.add_subparsers(dest="oracle", required=True)
    oh = osub.add_parser("hurwitz")
    oh.add_argument("--flavor", choices=("strict", "weak"), required=True)
    oh.add_argument("--mu", type=partition_arg, required=True)
    oh.add_argument("--nu", type=partition_arg, required=True)
    oh.add_argument("--g", type=nonneg_int, required=True)
    oh.add_argument("--format", choices=("json", "plain"), default="json")
    ol = osub.add_parser("lue")
    ol.add_argument("-k", "--keys", type=key_list, required=True)
    ol.add_argument("--N", type=int, choices=(1, 2, 3), required=True)
    ol.add_argument("--format", choices=("json", "plain"), default="json")
    og = osub.add_parser("gue")
    og.add_argument("-k", "--keys", type=int_list, required=True)
    og.add_argument("--format", choices=("json", "plain"), default="json")

    hd = sub.add_parser("hodge", help="Hurwitz side of the Hodge correspondence")
    hd.add_argument("what", choices=("rhs", "genus0", "elsv"))
    hd.add_argument("--mu", type=partition_arg, required=True)
    hd.add_argument("--gmax", type=nonneg_int, default=1)
    hd.add_argument("--g", type=nonneg_int, default=1)
    hd.add_argument("--format", choices=("json", "plain"), default="json")

    ck = sub.add_parser("check", help="verification suites")
    ck.add_argument("suite", choices=("all",) + tuple(checks.SUITES))
    ck.add_argument("--format", choices=("json", "plain"), default="plain")
    return p


def _preprocess(argv):
    """Glue '-k -2,3' into '-k=-2,3' so negative lists are not taken for flags."""
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in LIST_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


# output helpers

def _request(args) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "format" or v is None:
            continue
        if isinstance(v, dict):
            v = {n: rat_str(x) for n, x in v.items()}
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def _emit_json(args, result, margin=DEFAULT_MARGIN):
    doc = {"request": _request(args), "result": result, "provenance": {"order_margin": margin}}
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False)


def _poly_csv(p: MultiPoly, kind="num"):
    rows = []
    for e, c in p.sorted_terms():
        rows.append([kind, e[var_index("N")], e[var_index("alpha")], "", rat_str(c)])
    return rows


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


# verbs

def _correlator(args, parser):
    value = connected_correlator(args.keys, order_margin=args.margin)
    if args.eval:
        value = _evaluate(value, args.eval, parser)
    if isinstance(value, Fraction):
        if args.format == "json":
            return _emit_json(args, {"value": rat_str(value)}, args.margin)
        return rat_str(value)
    if isinstance(value, MultiPoly):
        value = CorrelatorValue.lift(value)
    fmt = args.format
    if fmt == "json":
        res = {"key": list(as_key(args.keys).keys), **value.to_json(), "text": value.format("ascii")}
        return _emit_json(args, res, args.margin)
    if fmt == "csv":
        rows = _poly_csv(value.numerator)
        rows += [["den", "", "", j, m] for j, m in value.blocks]
        return _csv(rows, ["part", "N", "alpha", "shift", "value"])
    return value.format(fmt)


def _evaluate(value: CorrelatorValue, env: dict, parser):
    if "alpha" in env and value.blocks:
        a = env["alpha"]
        jmax = max(j for j, _ in value.blocks)
        if a.denominator == 1 and -jmax <= a <= jmax:
            parser.error(f"argument --eval: alpha={a} hits a Pochhammer zero of a_{jmax}; "
                         "the correlator is not defined there")
    if "N" in env and "alpha" in env:
        return value.evaluate(**env)
    if "N" in env:
        return value.subs("N", env["N"])
    den = Fraction(1)
    for j, m in value.blocks:
        den *= block_value(j, env["alpha"]) ** m
    return value.numerator.partial_eval(alpha=env["alpha"]) / den


def _hurwitz(args):
    table = hurwitz_table(args.flavor, args.mu, args.gmax, args.smax, margin=args.margin)
    rows = [(g, s, v) for g, s, v in table.rows()]
    if args.format == "json":
        res = {"flavor": args.flavor, "mu": list(args.mu),
               "entries": [{"g": g, "s": s, "H": v} for g, s, v in rows]}
        return _emit_json(args, res, args.margin)
    if args.format == "csv":
        return _csv(rows, ["g", "s", "H"])
    if args.format == "latex":
        lines = ["\\begin{tabular}{rrr}", "$g$ & $s$ & $H$ \\\\ \\hline"]
        lines += [f"{g} & {s} & {v} \\\\" for g, s, v in rows]
        lines.append("\\end{tabular}")
        return "\n".join(lines)
    width = max(len(str(v)) for _, _, v in rows) if rows else 1
    return "\n".join(f"g={g} s={s} {v:>{width}}" for g, s, v in rows)


def _oracle(args):
    if args.oracle == "hurwitz":
        value = hurwitz_brute(args.mu, args.nu, args.g, args.flavor)
        res = {"count": value}
        text = str(value)
    elif args.oracle == "lue":
        rf = lue_eigenvalue_oracle(args.keys, args.N)
        res = {"numerator": rf.num.to_json(), "denominator": rf.den.to_json()}
        text = f"({format_poly(rf.num)})/({format_poly(rf.den)})"
    else:
        p = gue_even_oracle(args.keys)
        res = p.to_json()
        text = format_poly(p)
    return _emit_json(args, res) if args.format == "json" else text


def _hodge(args):
    mu = as_partition(args.mu)
    if args.what == "rhs":
        series = hodge_rhs(mu, args.gmax)
        items = sorted(series.coefficients.items())
        res = {"eps_power_" + str(p): c.to_json() for p, c in items}
        text = "\n".join(f"eps^{p}: {format_poly(c, order=('lambda',))}" for p, c in items)
    elif args.what == "genus0":
        p = hodge_genus0(mu)
        res, text = p.to_json(), format_poly(p, order=("lambda",))
    else:
        side, predicted = elsv_combination(mu, args.g)
        res = {"hurwitz_side": rat_str(side), "predicted_integral": rat_str(predicted)}
        text = f"hurwitz_side={rat_str(side)} predicted_integral={rat_str(predicted)}"
    return _emit_json(args, res) if args.format == "json" else text


def _check(args):
    names = CHECK_ALL if args.suite == "all" else (args.suite,)
    results, failed, first = {}, False, None
    for name in names:
        rep = checks.SUITES[name]()
        entry = {"ok": rep.ok, "checked": rep.checked}
        if rep.failures:
            entry["first_counterexample"] = repr(rep.failures[0])
            if first is None:
                first = (name, rep.failures[0])
        errata = getattr(rep, "errata", None)
        if errata:
            entry["errata"] = [{"kind": k, "key": list(key), "note": note} for k, key, note in errata]
        results[name] = entry
        failed = failed or not rep.ok
    if args.format == "json":
        out = _emit_json(args, results)
    else:
        lines = []
        for name, e in results.items():
            lines.append(f"{name}: {'ok' if e['ok'] else 'FAILED'} ({e['checked']} checks)")
            for er in e.get("errata", []):
                lines.append(f"  erratum {er['kind']} {tuple(er['key'])}: {er['note']}")
        if first:
            lines.append(f"first counterexample [{first[0]}]: {first[1]!r}")
        out = "\n".join(lines)
    return out, 1 if failed else 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(_preprocess(argv))
    try:
        if args.verb == "correlator":
            out, code = _correlator(args, parser), 0
        elif args.verb == "hurwitz":
            out, code = _hurwitz(args), 0
        elif args.verb == "oracle":
            out, code = _oracle(args), 0
        elif args.verb == "hodge":
            out, code = _hodge(args), 0
        else:
            out, code = _check(args)
    except GuardrailError as exc:
        parser.error(str(exc))
    except ValueError as exc:
        parser.error(str(exc))
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
