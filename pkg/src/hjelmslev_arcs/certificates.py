"""Arc certificates: self-contained JSON files that can be re-verified from
scratch (ring text, generators, u, orbit vector, explicit points)."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .arcs import is_invariant, secant_distribution, verify
from .galois_ring import parse_ring
from .groups import RingMatrix, resolve_group
from .plane import PlaneModel, plane_for

FORMAT = "hjelmslev-arc-certificate/1"


class CertificateError(ValueError):
    pass


def build_certificate(*, plane: PlaneModel, group, generators, u: int, points, x=None,
                      orbit_sizes=None, multiarc: bool = False, solver: dict | None = None) -> dict:
    ring = plane.ring
    counts: dict[int, int] = {}
    for i in points:
        counts[int(i)] = counts.get(int(i), 0) + 1
    report = verify(points, plane, u)
    return {
        "format": FORMAT,
        "ring": ring.to_text(),
        "group": group if isinstance(group, str) else "explicit",
        "generators": [g.to_coeffs() for g in generators],
        "u": int(u),
        "n": int(report.size),
        "arc_kind": "multiarc" if multiarc else "projective",
        "max_line_count": report.max_line_count,
        "attains_u": report.attains_u,
        "x": None if x is None else [int(v) for v in x],
        "orbit_sizes": None if orbit_sizes is None else [int(v) for v in orbit_sizes],
        "points": [
            {
                "index": i,
                "coords": [list(ring.coeffs_of(int(c))) for c in plane.point_reps[i]],
                "multiplicity": mult,
            }
            for i, mult in sorted(counts.items())
        ],
        "secant_distribution": {str(k): v for k, v in secant_distribution(points, plane).items()},
        "solver": solver or {},
    }


def write_certificate(cert: dict, directory: Path, stem: str) -> Path:
    """Never overwrites: appends -2, -3, ... to the stem if needed."""
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{stem}.json"
    k = 2
    while path.exists():
        path = directory / f"{stem}-{k}.json"
        k += 1
    path.write_text(json.dumps(cert, indent=1) + "\n", encoding="utf-8")
    return path


def load_certificate(path) -> dict:
    try:
        cert = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read certificate {path}: {exc}") from exc
    if cert.get("format") != FORMAT:
        raise CertificateError(f"{path}: unknown format {cert.get('format')!r}")
    for key in ("ring", "u", "n", "points", "secant_distribution", "generators"):
        if key not in cert:
            raise CertificateError(f"{path}: missing field {key!r}")
    return cert


def certificate_points(cert: dict, plane: PlaneModel) -> tuple[list[int], list[str]]:
    """Point multiset rebuilt from the coordinates, plus index mismatches."""
    ring = plane.ring
    points, problems = [], []
    for entry in cert["points"]:
        coords = np.array([[ring.index_of(c) for c in entry["coords"]]])
        try:
            idx = int(plane.index_of(coords)[0])
        except ValueError as exc:
            raise CertificateError(f"bad point coordinates {entry['coords']}: {exc}") from exc
        if idx != entry.get("index", idx):
            problems.append(f"point {entry['index']} has coordinates of point {idx}")
        points.extend([idx] * int(entry.get("multiplicity", 1)))
    return sorted(points), problems


def verify_certificate(path) -> dict:
    """Rebuild the plane and re-check every claim of the certificate."""
    cert = load_certificate(path)
    ring = parse_ring(cert["ring"])
    plane = plane_for(ring)
    u = int(cert["u"])
    points, problems = certificate_points(cert, plane)
    report = verify(points, plane, u)
    if not report.is_arc:
        problems.append(f"lines {report.violated_lines[:10]} carry more than u={u} points "
                        f"(max {report.max_line_count})")
    if report.size != cert["n"]:
        problems.append(f"certificate claims n={cert['n']} but lists {report.size} points")
    if cert.get("attains_u") is not None and cert["attains_u"] != report.attains_u:
        problems.append(f"attains_u recorded {cert['attains_u']}, found {report.attains_u}")
    if cert.get("arc_kind", "projective") == "projective" and not report.projective:
        problems.append("projective certificate lists a point twice")
    secants = {str(k): v for k, v in secant_distribution(points, plane).items()}
    if secants != {str(k): v for k, v in cert["secant_distribution"].items()}:
        problems.append(f"secant distribution differs: recorded {cert['secant_distribution']}, found {secants}")
    gens = [RingMatrix(ring, g) for g in cert["generators"]]
    if cert.get("group") == "singer" and gens != resolve_group("singer", ring):
        problems.append("recorded generator is not this build's Singer lift")
    if not is_invariant(points, gens, plane):
        problems.append("point multiset is not invariant under the generators")
    if cert.get("x") is not None and cert.get("orbit_sizes") is not None:
        mass = sum(a * b for a, b in zip(cert["x"], cert["orbit_sizes"]))
        if mass != cert["n"]:
            problems.append(f"orbit vector has mass {mass}, not n={cert['n']}")
    return {
        "path": str(path),
        "ring": ring.to_text(),
        "u": u,
        "n": report.size,
        "max_line_count": report.max_line_count,
        "attains_u": report.attains_u,
        "projective": report.projective,
        "secant_distribution": secants,
        "violated_lines": report.violated_lines,
        "passed": not problems,
        "problems": problems,
        "_points": points,
        "_plane": plane,
    }
