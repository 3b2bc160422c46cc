"""Command line interface: search, verify, code-report, table, reproduce-paper."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .certificates import CertificateError, load_certificate, verify_certificate
from .codes import EnumerationBudgetError, code_report
from .config import ConfigError, load_config
from .pipeline import build_table, load_records, run_search, search_exit_code, table_csv, table_json, table_text


def _parse_u(text):
    if text is None:
        return None
    if "-" in text:
        lo, hi = text.split("-", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",")]


def _parse_group(text):
    if text is None or text in ("trivial", "singer"):
        return text
    return json.loads(text)


def cmd_search(args) -> int:
    try:
        config = load_config(
            args.config,
            ring=args.ring,
            group=_parse_group(args.group),
            u=_parse_u(args.u),
            n=args.n,
            mode=args.mode or ("fixed-n" if args.n is not None and args.config is None else None),
            target=args.target,
            multiarc=True if args.multiarc else None,
            max_multiplicity=args.max_multiplicity,
            budget_nodes=args.budget_nodes,
            budget_seconds=args.budget_seconds,
            workers=args.workers,
            out=args.out,
        )
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return 3
    records = run_search(config)
    for rec in records:
        tail = f" -> {rec['certificate']}" if rec["certificate"] else ""
        flag = " (optimal)" if rec["optimal"] else ""
        print(f"{rec['ring_name']} u={rec['u']}: {rec['status']} n={rec['n']}{flag}{tail}")
    return search_exit_code(records)


def cmd_verify(args) -> int:
    status = 0
    for path in args.certificates:
        try:
            report = verify_certificate(path)
        except CertificateError as exc:
            print(f"{path}: malformed certificate: {exc}", file=sys.stderr)
            status = 1
            continue
        public = {k: v for k, v in report.items() if not k.startswith("_")}
        if args.json:
            print(json.dumps(public, indent=1))
        else:
            verdict = "PASS" if report["passed"] else "FAIL"
            print(f"{verdict} {path}: n={report['n']} u={report['u']} max={report['max_line_count']} "
                  f"secants={report['secant_distribution']}")
            for problem in report["problems"]:
                print(f"  - {problem}")
        if not report["passed"]:
            status = 1
    return status


def _report_text(rep: dict) -> str:
    lines = [
        f"ring: {rep['ring']}",
        f"code: [n={rep['n']}, k={rep['k']}, d_hom={rep['d_hom']}], {rep['num_codewords']} codewords",
        "homogeneous weight enumerator: " + " + ".join(f"{c} X^{w}" for w, c in reversed(rep["hom_weight_enumerator"])),
        "k-types: " + ", ".join(f"{c} x {tuple(t)}" for t, c in rep["ktype_census"]),
    ]
    gray = rep.get("gray")
    if gray:
        lines.append(
            f"Gray image: [N={gray['N']}, log_q size={gray['log_q_size']}, d_Ham={gray['d_ham']}] over F_{gray['q']}, "
            f"distance invariant: {gray['distance_invariant']}, linear: {gray['linear']}"
        )
    chain = rep.get("griesmer_chain")
    if chain:
        lines.append("Griesmer residuals: " + " -> ".join(f"[{n},{k},{d}]" for n, k, d in chain))
    return "\n".join(lines) + "\n"


def cmd_code_report(args) -> int:
    try:
        cert = load_certificate(args.certificate)
        check = verify_certificate(args.certificate)
    except CertificateError as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return 1
    if not check["passed"]:
        print("certificate does not verify: " + "; ".join(check["problems"]), file=sys.stderr)
        return 1
    try:
        rep = code_report(check["_points"], check["_plane"], max_codewords=args.max_codewords)
    except EnumerationBudgetError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    words = rep.pop("_gray_words", None)
    rep["certificate"] = str(args.certificate)
    rep["arc"] = {"u": cert["u"], "n": cert["n"]}
    text = _report_text(rep)
    print(text, end="")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        stem = Path(args.certificate).stem
        (out / f"{stem}.code.json").write_text(json.dumps(rep, indent=1, default=int) + "\n", encoding="utf-8")
        (out / f"{stem}.code.txt").write_text(text, encoding="utf-8")
        if args.export_words and words is not None:
            np.savetxt(out / f"{stem}.gray.txt", words, fmt="%d", delimiter="")
    return 0


def cmd_table(args) -> int:
    table = build_table(load_records(args.results))
    print(table_text(table), end="")
    for item in table["rejected"]:
        print(f"rejected {item['certificate']}: {item['reason']}", file=sys.stderr)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "table.txt").write_text(table_text(table), encoding="utf-8")
        (out / "table.csv").write_text(table_csv(table), encoding="utf-8")
        (out / "table.json").write_text(json.dumps(table_json(table), indent=1) + "\n", encoding="utf-8")
    return 0


def cmd_reproduce(args) -> int:
    from .reproduce import run_all

    skip = {int(s) for s in args.skip.split(",")} if args.skip else set()
    out = Path(args.out) if args.out else None
    checks = run_all(certificate_dir=out / "certificates" if out else None, skip=skip)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} criteria passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hjelmslev-arcs", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("search", help="search for arcs and write certificates")
    s.add_argument("config", nargs="?", help="JSON run config")
    s.add_argument("--ring", help="e.g. Z8, G16, 'GR(p^m=4,q=4,f=[1,1,1])'")
    s.add_argument("--group", help="trivial, singer, or JSON list of generator matrices")
    s.add_argument("--u", help="u, a list '2,3' or a range '2-5'")
    s.add_argument("--n", type=int)
    s.add_argument("--mode", choices=["fixed-n", "maximize"])
    s.add_argument("--target", type=int, help="maximize: stop at this size")
    s.add_argument("--multiarc", action="store_true")
    s.add_argument("--max-multiplicity", type=int)
    s.add_argument("--budget-nodes", type=int)
    s.add_argument("--budget-seconds", type=float)
    s.add_argument("--workers", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify", help="re-verify certificates")
    v.add_argument("certificates", nargs="+")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("code-report", help="ring-linear code and Gray image of a certified arc")
    c.add_argument("certificate")
    c.add_argument("--out")
    c.add_argument("--export-words", action="store_true", help="write Gray image words as digit rows")
    c.add_argument("--max-codewords", type=int, default=200_000)
    c.set_defaults(func=cmd_code_report)

    t = sub.add_parser("table", help="aggregate verified results (rows u, columns rings)")
    t.add_argument("results", nargs="*", default=[], help="results.jsonl files or directories")
    t.add_argument("--out")
    t.set_defaults(func=cmd_table)

    r = sub.add_parser("reproduce-paper", help="run the reproduction criteria")
    r.add_argument("--out", help="directory for the certificates written along the way")
    r.add_argument("--skip", help="comma separated criterion numbers to skip")
    r.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
