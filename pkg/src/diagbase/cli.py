"""Command-line front end tying the modules into reproducible verification runs.

Exit codes keep mathematical evidence and resource exhaustion apart:
0 = all assertions passed, 1 = computed values disagree with the predictions
(evidence), 2 = a configured cap was exceeded before an answer was reached.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, k2, partitions, rc, suites
from .bases import verify_paper_case
from .diagonal import REALIZE_CAP_DEFAULT, build_group, config_from_json
from .errors import DiagbaseError, ResourceLimitError
from .report import (
    Manifest,
    checks_from_csv,
    checks_to_csv,
    rows_to_csv,
    stable_json,
    suite_report,
    write_json,
)

EXIT_OK = 0
EXIT_EVIDENCE = 1
EXIT_RESOURCE = 2

SIM_CSV_COLUMNS = ("n", "k", "q", "ell", "sim", "thm_reading", "prop_reading",
                   "agree_prop", "agree_thm")


def parse_t_name(name):
    """Accepts A5 / Alt5 / Alt(5) / L2_8 / L2(8) / PSL2_8."""
    s = name.replace("(", "_").replace(")", "").replace("-", "_")
    if s.startswith(("A", "Alt")) and not s.startswith(("AltL",)):
        digits = "".join(ch for ch in s if ch.isdigit())
        return "Alt", int(digits)
    if s.startswith(("L2", "PSL2", "L")):
        digits = s.split("_")[-1] if "_" in s else "".join(ch for ch in s if ch.isdigit())[1:]
        return "PSL2", int(digits)
    raise DiagbaseError("cannot parse group name %r" % name)


def load_config(path):
    with open(path) as fh:
        return json.load(fh)


def class_by_label(T, label):
    """Class rep from a label like 5A (element order + letter)."""
    order = int("".join(ch for ch in label if ch.isdigit()))
    letter = "".join(ch for ch in label if ch.isalpha()).upper() or "A"
    reps = [r for r in T.class_reps() if T.elem_order(r) == order]
    idx = ord(letter) - ord("A")
    if not 0 <= idx < len(reps):
        raise DiagbaseError("no class %s in %s" % (label, T.name))
    return reps[idx]


def _emit(report, args, manifest):
    if getattr(args, "json", None):
        write_json(report, args.json)
        manifest.add_output(args.json)
        manifest.finish(args.json + ".manifest.json")
    else:
        sys.stdout.write(stable_json(report))
    if getattr(args, "csv", None):
        if "checks" in report:
            checks_to_csv(report, args.csv)
        else:
            flat = {k: v for k, v in report.items() if not isinstance(v, (dict, list))}
            rows_to_csv([flat], tuple(sorted(flat)), args.csv)
        manifest.add_output(args.csv)


def cmd_catalog(args, manifest):
    import math

    rows = []
    for family, param in catalog.catalog_entries():
        if family == "Alt":
            order, degree = math.factorial(param) // 2, param
            name = "Alt(%d)" % param
        else:
            order = param * (param * param - 1) // math.gcd(2, param - 1)
            degree, name = param + 1, "L2(%d)" % param
        within = order <= catalog.T_ORDER_CAP_DEFAULT
        row = {
            "name": name,
            "family": family,
            "param": param,
            "order": order,
            "degree": degree,
            "within_default_cap": within,
        }
        if within:
            row["classes"] = len(catalog.get_simple(family, param).classes())
        rows.append(row)
    report = {"schema": "diagbase-catalog/1", "groups": rows}
    _emit(report, args, manifest)
    return EXIT_OK


def cmd_base(args, manifest):
    doc = load_config(args.config)
    manifest.set_config(doc)
    cfg = config_from_json(doc)
    G = build_group(cfg)
    rep = verify_paper_case(G, realize_cap=args.cap_omega)
    stats = set(args.stats.split(","))
    out = {"label": rep.label, "order": rep.order, "omega": rep.omega}
    if "b" in stats:
        out["b"] = rep.b
    if "greedy" in stats:
        out["greedy_sizes"] = list(rep.greedy_sizes)
        out["greedy_singleton"] = rep.greedy_singleton
    if "irr" in stats:
        out["I"] = rep.irr
    out["predicted"] = rep.predicted
    out["match"] = rep.match
    out["witnesses"] = rep.witnesses
    out["elapsed_ms"] = rep.elapsed_ms
    _emit(out, args, manifest)
    return EXIT_OK if rep.match and rep.invariants_ok else EXIT_EVIDENCE


def cmd_partition(args, manifest):
    if args.action != "sim":
        raise DiagbaseError("unknown partition action %r" % args.action)
    labels = ("A", "S") if args.q == "both" else (args.q,)
    rows = partitions.closed_form_vs_sim(args.n, range(args.k_from, args.k_to + 1), labels)
    ok = all(r["agree_prop"] for r in rows)
    if args.csv:
        rows_to_csv(rows, SIM_CSV_COLUMNS, args.csv)
        manifest.add_output(args.csv)
    report = {
        "schema": "diagbase-report/1",
        "suite": "partition-sim",
        "n": args.n,
        "rows": len(rows),
        "all_match_prop_reading": ok,
        "thm_literal_disagreements": [
            {"k": r["k"], "q": r["q"]} for r in rows if not r["agree_thm"]
        ],
    }
    if args.json:
        write_json(report, args.json)
        manifest.add_output(args.json)
        manifest.finish(args.json + ".manifest.json")
    else:
        sys.stdout.write(stable_json(report))
    return EXIT_OK if ok else EXIT_EVIDENCE


def cmd_rc(args, manifest):
    doc = load_config(args.config)
    manifest.set_config(doc)
    cfg = config_from_json(doc)
    if args.witness == "prop5.3":
        fam, par = cfg.family, cfg.param
        if fam != "Alt":
            raise DiagbaseError("prop5.3 witnesses need an alternating socle")
        group, pair = rc.witness_prop53(par - 2, cfg.k)
    else:
        group = build_group(cfg)
        pair = rc.witness_rc4(group)
    cert = rc.verify_witness(group, pair)
    bound = rc.rc_bounds(group, max_len=args.max_len, witnesses=[pair])
    report = {
        "schema": "diagbase-report/1",
        "suite": "rc",
        "label": group.config.label,
        "witness": rc.witness_to_json(group, pair, cert.transporters),
        "complete": cert.complete,
        "same_orbit": cert.joint,
        "certified_lower": cert.rc_lower if cert.certified else 2,
        "bounds": {
            "lower": bound.lower,
            "upper": bound.upper,
            "upper_source": bound.upper_source,
            "search_length_bound": bound.search_length_bound,
            "note": bound.note,
        },
    }
    _emit(report, args, manifest)
    return EXIT_OK if cert.certified else EXIT_EVIDENCE


def cmd_k2(args, manifest):
    if args.action == "qtilde":
        family, param = parse_t_name(args.T)
        T = catalog.build_simple(family, param)
        aut = catalog.build_aut(T)
        y = class_by_label(T, args.y_class)
        q = k2.qtilde_exact(T, y, order_cap=args.cap_order)
        worst = max(
            (
                k2.qtilde_direct_fraction(T, aut, x, y)
                for x in T.class_reps()
                if x
                and catalog.invertiliser_order(aut, x)
                <= catalog.invertiliser_order(aut, y) * aut.out_order
            ),
            default=0,
        )
        report = {
            "schema": "diagbase-report/1",
            "suite": "k2-qtilde",
            "T": T.name,
            "y_class": args.y_class,
            "qtilde": str(q),
            "qtilde_float": float(q),
            "max_direct_fraction": str(worst),
            "dominates": worst <= q,
            "certifies_greedy_3": q < 1,
        }
        _emit(report, args, manifest)
        return EXIT_OK if worst <= q else EXIT_EVIDENCE
    if args.action == "criterion":
        row = k2.lie_table_params(args.family, args.m, args.q, args.eps)
        if row.torus_order is not None:
            report = {
                "schema": "diagbase-report/1",
                "suite": "k2-criterion",
                "family": args.family,
                "q": args.q,
                "torus_order": row.torus_order,
            }
            _emit(report, args, manifest)
            return EXIT_OK
        val = k2.criterion_value(row.params())
        holds = k2.criterion_cor311(row.params())
        report = {
            "schema": "diagbase-report/1",
            "suite": "k2-criterion",
            "family": args.family,
            "dims": args.m,
            "q": args.q,
            "c": row.c,
            "a": row.a,
            "value": float(val),
            "holds": holds,
        }
        _emit(report, args, manifest)
        return EXIT_OK
    if args.action == "procedure-A":
        family, param = parse_t_name(args.T)
        T = catalog.build_simple(family, param)
        rep = k2.procedure_lemma_A(T)
        report = {
            "schema": "diagbase-report/1",
            "suite": "k2-procedure-A",
            "T": T.name,
            "v": rep.v,
            "s_paper": list(rep.s_paper),
            "s_minimal": list(rep.s_minimal),
            "inclusion_ok": rep.inclusion_ok,
            "partners": {str(x): x0 for x, x0 in rep.partners.items()},
            "strong_intersection": {str(x): rep.strong[x] for x in rep.strong},
            "success": rep.success,
            "conclusion": "greedy size 3 for every k=2 group over %s" % T.name
            if rep.success
            else "failure rows are evidence",
        }
        _emit(report, args, manifest)
        return EXIT_OK if rep.success else EXIT_EVIDENCE
    raise DiagbaseError("unknown k2 action %r" % args.action)


def cmd_verify(args, manifest):
    kw = {
        "cap_omega": args.cap_omega,
        "threads": args.threads,
        "include_optional": args.include_optional,
    }
    if args.suite == "all-desk":
        report = suites.suite_all_desk(**kw)
    elif args.suite == "thm1.1-k2":
        family, param = parse_t_name(args.T or "A5")
        report = suites.suite_thm11_k2(family, param, cap_omega=args.cap_omega,
                                       threads=args.threads)
    elif args.suite == "partition-lemmas":
        ns = tuple(int(x) for x in (args.n or "6,7,8").split(","))
        rep1 = suites.suite_partition_lemmas(ns=ns, threads=args.threads)
        rep2 = suites.suite_refinement(threads=args.threads)
        report = suite_report("partition-lemmas", rep1["checks"] + rep2["checks"])
    elif args.suite in suites.SUITES:
        report = suites.SUITES[args.suite](**kw)
    else:
        raise DiagbaseError("unknown suite %r" % args.suite)
    manifest.record(report)
    _emit(report, args, manifest)
    return EXIT_OK if report["passed"] else EXIT_EVIDENCE


def cmd_report(args, manifest):
    if args.infile.endswith(".csv"):
        checks = checks_from_csv(args.infile)
        report = suite_report(checks[0]["suite"] if checks else "empty", checks)
    else:
        with open(args.infile) as fh:
            report = json.load(fh)
    if args.format == "csv":
        out = args.out or (args.infile + ".csv")
        checks_to_csv(report, out)
        manifest.add_output(out)
    else:
        out = args.out or (args.infile + ".json")
        write_json(report, out)
        manifest.add_output(out)
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="diagbase",
                                 description="diagonal-type base and relational-complexity computations")
    ap.add_argument("--cap-omega", type=int, default=REALIZE_CAP_DEFAULT,
                    help="realization cap on |Omega|")
    ap.add_argument("--cap-order", type=int, default=10_000_000,
                    help="element-enumeration order cap")
    ap.add_argument("--max-len", type=int, default=None,
                    help="tuple length bound for RC witness searches")
    ap.add_argument("--threads", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="list catalog groups")
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("base", help="base statistics for one config")
    p.add_argument("--config", required=True)
    p.add_argument("--stats", default="b,greedy,irr")
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_base)

    p = sub.add_parser("partition", help="partition combinatorics")
    p.add_argument("action", choices=["sim"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k-from", type=int, required=True)
    p.add_argument("--k-to", type=int, required=True)
    p.add_argument("--q", choices=["A", "S", "both"], default="both")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("rc", help="relational complexity witnesses and bounds")
    p.add_argument("--config", required=True)
    p.add_argument("--witness", choices=["thm1.3", "prop5.3"], default="thm1.3")
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_rc)

    p = sub.add_parser("k2", help="k=2 toolkit")
    p.add_argument("action", choices=["qtilde", "criterion", "procedure-A"])
    p.add_argument("--T")
    p.add_argument("--y-class")
    p.add_argument("--family")
    p.add_argument("--m", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--eps", type=int, default=1)
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_k2)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["thm1.1-k2", "thm1.1-k3", "cor1.2",
                                     "partition-lemmas", "rc-witnesses",
                                     "k2-criteria", "all-desk"])
    p.add_argument("--T")
    p.add_argument("--n")
    p.add_argument("--include-optional", action="store_true")
    p.add_argument("--json")
    p.add_argument("--csv")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", help="convert a stored report between json and csv")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    manifest = Manifest(argv)
    try:
        code = args.fn(args, manifest)
    except ResourceLimitError as exc:
        sys.stderr.write("resource limit: %s\n" % exc)
        return EXIT_RESOURCE
    except DiagbaseError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_EVIDENCE
    return code


if __name__ == "__main__":
    sys.exit(main())
