"""End-to-end search runs: ring -> plane -> orbits -> condensed system ->
solver -> verified certificate + result record."""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from pathlib import Path

from .arcs import expand, verify
from .certificates import build_certificate, verify_certificate, write_certificate
from .config import RunConfig
from .galois_ring import parse_ring
from .groups import condensed_for
from .search import BudgetExhausted, SearchProblem, maximize, solve_fixed_n

log = logging.getLogger(__name__)

FOUND, NOT_FOUND, INCONCLUSIVE = "found", "not-found", "inconclusive"
EXIT_CODES = {FOUND: 0, NOT_FOUND: 1, INCONCLUSIVE: 2}


def run_search(config: RunConfig) -> list[dict]:
    """One record per u; every found arc is verified and written as a certificate."""
    config.validate()
    ring = parse_ring(config.ring)
    plane, gens, part, system = condensed_for(ring, config.group)
    digest = config.digest()
    out = Path(config.out)
    records = []
    for u in config.u:
        problem = SearchProblem(
            system, u,
            n=config.n if config.mode == "fixed-n" else None,
            multiarc=config.multiarc,
            max_multiplicity=config.max_multiplicity,
            node_limit=config.budget_nodes,
            time_limit=config.budget_seconds,
        )
        start = time.monotonic()
        optimal = False
        if config.mode == "fixed-n":
            try:
                sol = solve_fixed_n(problem, workers=config.workers)
                status = FOUND if sol is not None else NOT_FOUND
            except BudgetExhausted:
                sol, status = None, INCONCLUSIVE
        else:
            sol, optimal = maximize(problem, workers=config.workers, stop_at=config.target)
            status = FOUND if sol is not None and sol.n > 0 else (NOT_FOUND if optimal else INCONCLUSIVE)
        seconds = time.monotonic() - start
        record = {
            "config_digest": digest,
            "ring": ring.to_text(),
            "ring_name": ring.short_name,
            "group": config.group if isinstance(config.group, str) else "explicit",
            "u": u,
            "mode": config.mode,
            "multiarc": config.multiarc,
            "status": status,
            "n": None,
            "optimal": optimal,
            "certificate": None,
            "seconds": round(seconds, 3),
            "nodes": None if sol is None else sol.nodes,
        }
        if sol is not None and sol.n > 0:
            points = expand(sol, part)
            report = verify(points, plane, u)
            # soundness gate: nothing unverified is ever written
            assert report.is_arc and report.size == sol.n, report
            cert = build_certificate(
                plane=plane, group=config.group, generators=gens, u=u, points=points,
                x=sol.x, orbit_sizes=system.orbit_sizes, multiarc=config.multiarc,
                solver={
                    "mode": config.mode,
                    "budget_nodes": config.budget_nodes,
                    "budget_seconds": config.budget_seconds,
                    "nodes": sol.nodes,
                    "optimal": optimal,
                    "config_digest": digest,
                },
            )
            stem = f"arc-{ring.short_name.replace('(', '').replace(')', '').replace(',', '-')}-u{u}-n{sol.n}-{digest[:10]}"
            path = write_certificate(cert, out / "certificates", stem)
            record.update(n=sol.n, certificate=str(path))
            log.info("u=%d: n=%d (%s), certificate %s", u, sol.n, "optimal" if optimal else "lower bound", path)
        else:
            log.info("u=%d: %s", u, status)
        out.mkdir(parents=True, exist_ok=True)
        with open(out / "results.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
        records.append(record)
    return records


def search_exit_code(records: list[dict]) -> int:
    return max((EXIT_CODES[r["status"]] for r in records), default=0)


# tables


def load_records(paths) -> list[dict]:
    records = []
    for p in paths:
        p = Path(p)
        files = sorted(p.rglob("results.jsonl")) if p.is_dir() else [p]
        for f in files:
            for line in f.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    records.append(json.loads(line))
    return records


def build_table(records: list[dict]) -> dict:
    """Best verified n per (ring, u).  Records whose certificate is missing or
    fails re-verification are dropped."""
    cells: dict[tuple[str, int], dict] = {}
    rejected = []
    for rec in records:
        if rec.get("status") != FOUND or not rec.get("certificate"):
            continue
        try:
            check = verify_certificate(rec["certificate"])
        except (OSError, ValueError) as exc:
            rejected.append({"certificate": rec["certificate"], "reason": str(exc)})
            continue
        if not check["passed"] or check["n"] != rec["n"]:
            rejected.append({"certificate": rec["certificate"], "reason": "; ".join(check["problems"])})
            continue
        key = (rec["ring"], rec["u"])
        best = cells.get(key)
        if best is None or rec["n"] > best["n"] or (rec["n"] == best["n"] and rec["optimal"] and not best["optimal"]):
            cells[key] = {"n": rec["n"], "optimal": bool(rec["optimal"]), "certificate": rec["certificate"],
                          "ring_name": rec.get("ring_name", rec["ring"])}
    rings = sorted({k[0] for k in cells}, key=lambda t: (parse_ring(t).order, t))
    us = sorted({k[1] for k in cells})
    return {"rings": rings, "u": us, "cells": cells, "rejected": rejected}


def _label(table, ring):
    for (r, _), cell in table["cells"].items():
        if r == ring:
            return cell["ring_name"]
    return ring


def table_text(table: dict) -> str:
    """Aligned text; a trailing '!' marks a proven optimum."""
    if not table["cells"]:
        return "(no verified results)\n"
    headers = ["u"] + [_label(table, r) for r in table["rings"]]
    rows = []
    for u in table["u"]:
        row = [str(u)]
        for r in table["rings"]:
            cell = table["cells"].get((r, u))
            row.append("" if cell is None else f"{cell['n']}{'!' if cell['optimal'] else ''}")
        rows.append(row)
    widths = [max(len(x) for x in col) for col in zip(headers, *rows)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(headers, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in rows]
    return "\n".join(lines) + "\n"


def table_csv(table: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["ring", "u", "n", "optimal", "certificate"])
    for (ring, u), cell in sorted(table["cells"].items(), key=lambda kv: (kv[0][1], kv[0][0])):
        writer.writerow([cell["ring_name"], u, cell["n"], cell["optimal"], cell["certificate"]])
    return buf.getvalue()


def table_json(table: dict) -> dict:
    return {
        "rings": table["rings"],
        "u": table["u"],
        "cells": [
            {"ring": ring, "u": u, **cell}
            for (ring, u), cell in sorted(table["cells"].items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ],
        "rejected": table["rejected"],
    }
