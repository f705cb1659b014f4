"""Command-line pipeline: JSON instances in, JSON reports and pictures out.

Instance files (schema "1") carry rationals as decimal-free strings and
dispatch on "type":

    {"schema": "1", "type": "polynomials",
     "p0": ["0", "-13", "0", "1"], "p1": ["0", "-5", "1"], "p2": ["1", "1"]}

    {"schema": "1", "type": "pi",
     "a": [...], "b": [...], "form": "k1+k2/s"}

    {"schema": "1", "type": "sof",
     "A": [["0", "1"], ["0", "0"]], "B": [["0"], ["1"]],
     "C": [["1", "0"], ["0", "1"]]}

Coefficient lists are ascending.  An optional "box" object
(``{"k1": ["-5", "5"], "k2": ["-5", "5"]}``) supplies the default scan
window.  Reports round-trip losslessly: every number in them is a
rational string; floats exist only inside SVG/PGM geometry.

Exit codes: 0 success, 2 degenerate or invalid instance, 3 when
--require-certificate is set and no inclusion certificate was obtained.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .bezout import QuadraticMatrixPencil, SymMatrix, hermite_pencil
from .certify import (
    BOUNDARY,
    CERTIFIED_SUBSET,
    STABLE,
    UNSTABLE,
    Certificate,
    certify_lmi_region,
)
from .curves import (
    AffinePencil,
    AffineScalar,
    CertificateAssembly,
    CurveData,
    FactorizationReport,
    assemble_certificate_pencil,
    build_curve_data,
    verify_factorization,
)
from .frontends import PiPlant, SofTriple, pi_frontend, sof_frontend
from .polynomials import (
    InvalidInstanceError,
    ProblemInstance,
    UniPoly,
    format_rational,
    normalize_monic,
    parse_rational,
)
from .region import (
    Box,
    ComponentSet,
    GridScan,
    Polyline,
    certificate_flags,
    connected_components,
    convexity_probe,
    render,
    scan_grid,
    trace_boundary,
)

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_DEGENERATE = 2
EXIT_NOT_CERTIFIED = 3


class StageError(RuntimeError):
    """An error annotated with the pipeline stage that raised it."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


# ---------------------------------------------------------------------------
# instance files
# ---------------------------------------------------------------------------


def _poly_from_strings(values: Sequence, var: str = "s") -> UniPoly:
    return UniPoly([parse_rational(v) for v in values], var)


def instance_from_dict(data: dict) -> ProblemInstance:
    """Build a validated instance from a parsed instance document."""
    if not isinstance(data, dict):
        raise InvalidInstanceError("instance document must be a JSON object")
    schema = data.get("schema", SCHEMA_VERSION)
    if str(schema) != SCHEMA_VERSION:
        raise InvalidInstanceError(f"unsupported schema {schema!r}")
    kind = data.get("type")
    if kind == "polynomials":
        for key in ("p0", "p1", "p2"):
            if key not in data:
                raise InvalidInstanceError(f"missing field {key!r}")
        return normalize_monic(
            _poly_from_strings(data["p0"]),
            _poly_from_strings(data["p1"]),
            _poly_from_strings(data["p2"]),
        )
    if kind == "pi":
        for key in ("a", "b", "form"):
            if key not in data:
                raise InvalidInstanceError(f"missing field {key!r}")
        plant = PiPlant(
            a=_poly_from_strings(data["a"]),
            b=_poly_from_strings(data["b"]),
            form=data["form"],
        )
        return pi_frontend(plant)
    if kind == "sof":
        for key in ("A", "B", "C"):
            if key not in data:
                raise InvalidInstanceError(f"missing field {key!r}")
        triple = SofTriple(a=data["A"], b=data["B"], c=data["C"])
        return sof_frontend(triple)
    raise InvalidInstanceError(f"unknown instance type {kind!r}")


def parse_instance(path: str | Path) -> ProblemInstance:
    """Load and validate an instance file."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInstanceError(
            f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return instance_from_dict(data)


def box_from_dict(data: dict) -> Box:
    if set(data) != {"k1", "k2"} or any(len(data[k]) != 2 for k in ("k1", "k2")):
        raise ValueError('box must be {"k1": [min, max], "k2": [min, max]}')
    return Box(data["k1"][0], data["k1"][1], data["k2"][0], data["k2"][1])


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _poly_strings(p: UniPoly) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def _matrix_strings(m: SymMatrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m.entries]


def _matrix_from_strings(rows: list[list[str]]) -> SymMatrix:
    return SymMatrix(rows)


@dataclass(frozen=True, slots=True)
class RunConfig:
    """Everything one pipeline run needs."""

    input: str | Path
    box: Box | None = None
    resolution: int = 101
    seed: tuple[str, str] | None = None
    trials: int = 200
    out: str | Path | None = None
    svg: str | Path | None = None
    pgm: str | Path | None = None
    require_certificate: bool = False
    trace_samples: int = 400
    workers: int = 1


DEFAULT_BOX = Box(-5, 5, -5, 5)


@dataclass(frozen=True, slots=True)
class RegionReport:
    """Full pipeline result, losslessly serializable to JSON."""

    schema: str
    tool_version: str
    instance: dict
    hermite: dict
    line: dict
    parametrization: dict
    curve_pencil: dict
    certificate_pencil: dict | None
    factorization: dict | None
    certificate: dict | None
    seed_source: str | None
    components: list[dict]
    grid: dict

    def to_dict(self) -> dict:
        return {
            "schema": self.schema,
            "tool_version": self.tool_version,
            "instance": self.instance,
            "hermite": self.hermite,
            "line": self.line,
            "parametrization": self.parametrization,
            "curve_pencil": self.curve_pencil,
            "certificate_pencil": self.certificate_pencil,
            "factorization": self.factorization,
            "certificate": self.certificate,
            "seed_source": self.seed_source,
            "components": self.components,
            "grid": self.grid,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "RegionReport":
        return cls(**{k: data[k] for k in (
            "schema", "tool_version", "instance", "hermite", "line",
            "parametrization", "curve_pencil", "certificate_pencil",
            "factorization", "certificate", "seed_source", "components",
            "grid",
        )})

    @classmethod
    def loads(cls, text: str) -> "RegionReport":
        return cls.from_dict(json.loads(text))


def _auto_seed(scan: GridScan) -> tuple[Fraction, Fraction] | None:
    """First stable node whose four neighbours exist and are stable."""
    res = scan.resolution
    fallback = None
    for i2 in range(res):
        for i1 in range(res):
            if scan.label_at(i1, i2) != STABLE:
                continue
            if fallback is None:
                fallback = scan.node(i1, i2)
            if 0 < i1 < res - 1 and 0 < i2 < res - 1 and all(
                scan.label_at(n1, n2) == STABLE
                for n1, n2 in ((i1 - 1, i2), (i1 + 1, i2), (i1, i2 - 1), (i1, i2 + 1))
            ):
                return scan.node(i1, i2)
    return fallback


def run_analyze(config: RunConfig) -> RegionReport:
    """Run the full pipeline and write any requested artifacts."""

    def stage(name: str, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InvalidInstanceError, ValueError, ArithmeticError) as exc:
            raise StageError(name, exc) from exc

    raw = json.loads(Path(config.input).read_text(encoding="utf-8"))
    inst = stage("parse", instance_from_dict, raw)
    box = config.box
    if box is None and isinstance(raw, dict) and "box" in raw:
        box = stage("parse", box_from_dict, raw["box"])
    if box is None:
        box = DEFAULT_BOX

    h_pencil = stage("hermite", hermite_pencil, inst)
    curve = stage("curve", build_curve_data, inst)
    factorization = stage(
        "factorization", verify_factorization, inst, curve.line, curve.pencil, h_pencil
    )

    scan = stage(
        "scan", scan_grid, inst, box, config.resolution, h_pencil, None, config.workers
    )

    seed_source = None
    seed: tuple[Fraction, Fraction] | None = None
    if config.seed is not None:
        seed = (parse_rational(config.seed[0]), parse_rational(config.seed[1]))
        seed_source = "user"
    else:
        seed = _auto_seed(scan)
        seed_source = "auto" if seed is not None else None

    assembly: CertificateAssembly | None = None
    certificate: Certificate | None = None
    if seed is not None:
        assembly = stage(
            "assemble", assemble_certificate_pencil, inst, curve.line, curve.pencil, seed
        )
        scan = stage("scan", certificate_flags, scan, assembly.pencil)
        nodes = (
            scan.node(i1, i2)
            for i2 in range(scan.resolution)
            for i1 in range(scan.resolution)
        )
        certificate = stage(
            "certify", certify_lmi_region, inst, assembly, seed, nodes
        )

    components = stage("components", connected_components, scan)
    comp_reports = []
    enriched = []
    for comp in components.components:
        probe = stage(
            "components", convexity_probe, inst, scan, comp, config.trials, h_pencil
        )
        certified = None
        if certificate is not None and certificate.status == CERTIFIED_SUBSET:
            assert scan.c_pd is not None
            certified = any(scan.c_pd[scan.index(*cell)] for cell in comp.cells)
        enriched.append((comp, probe, certified))

    polylines = stage("trace", trace_boundary, curve, box, config.trace_samples)

    if config.svg or config.pgm:
        picture = stage("render", render, scan, components, polylines)
        if config.svg:
            Path(config.svg).write_text(picture.svg, encoding="utf-8")
        if config.pgm:
            Path(config.pgm).write_bytes(picture.pgm)

    for comp, probe, certified in enriched:
        comp_reports.append(
            {
                "id": comp.id,
                "cells": len(comp.cells),
                "sample": [format_rational(comp.sample[0]), format_rational(comp.sample[1])],
                "sample_interior": comp.sample_interior,
                "convexity": probe.verdict,
                "certified": certified,
            }
        )

    counts = scan.counts()
    report = RegionReport(
        schema=SCHEMA_VERSION,
        tool_version=__version__,
        instance={
            "type": raw.get("type") if isinstance(raw, dict) else None,
            "p0": _poly_strings(inst.p0),
            "p1": _poly_strings(inst.p1),
            "p2": _poly_strings(inst.p2),
        },
        hermite={
            "order": h_pencil.order,
            **{
                name: _matrix_strings(mat)
                for name, mat in zip(
                    ("H00", "H10", "H01", "H20", "H11", "H02"),
                    (
                        h_pencil.h00,
                        h_pencil.h10,
                        h_pencil.h01,
                        h_pencil.h20,
                        h_pencil.h11,
                        h_pencil.h02,
                    ),
                )
            },
        },
        line={
            "c0": format_rational(curve.line.c0),
            "c1": format_rational(curve.line.c1),
            "c2": format_rational(curve.line.c2),
        },
        parametrization={
            "q0": _poly_strings(curve.q0),
            "q1": _poly_strings(curve.q1),
            "q2": _poly_strings(curve.q2),
            "scaling": format_rational(curve.scaling),
        },
        curve_pencil={
            "order": curve.pencil.order,
            "F0": _matrix_strings(curve.pencil.f0),
            "F1": _matrix_strings(curve.pencil.f1),
            "F2": _matrix_strings(curve.pencil.f2),
        },
        certificate_pencil=None
        if assembly is None
        else {
            "order": assembly.pencil.order,
            "F0": _matrix_strings(assembly.pencil.f0),
            "F1": _matrix_strings(assembly.pencil.f1),
            "F2": _matrix_strings(assembly.pencil.f2),
            "line_dropped": assembly.line_dropped,
            "line_negated": assembly.line_negated,
            "curve_negated": assembly.curve_negated,
            "pd_at_seed": assembly.pd_at_seed,
            "notes": list(assembly.notes),
        },
        factorization={
            "alpha": format_rational(factorization.alpha),
            "beta": format_rational(factorization.beta),
            "g_scale": None
            if factorization.g_scale is None
            else format_rational(factorization.g_scale),
            "trivial": factorization.trivial,
        },
        certificate=None
        if certificate is None
        else {
            "status": certificate.status,
            "seed": [
                format_rational(certificate.seed[0]),
                format_rational(certificate.seed[1]),
            ],
            "F0": None if certificate.f0 is None else _matrix_strings(certificate.f0),
            "F1": None if certificate.f1 is None else _matrix_strings(certificate.f1),
            "F2": None if certificate.f2 is None else _matrix_strings(certificate.f2),
            "notes": list(certificate.notes),
        },
        seed_source=seed_source,
        components=comp_reports,
        grid={
            "box": {
                "k1": [format_rational(box.k1_min), format_rational(box.k1_max)],
                "k2": [format_rational(box.k2_min), format_rational(box.k2_max)],
            },
            "resolution": scan.resolution,
            "stable": counts[STABLE],
            "unstable": counts[UNSTABLE],
            "boundary": counts[BOUNDARY],
        },
    )
    if config.out:
        Path(config.out).write_text(report.dumps() + "\n", encoding="utf-8")
    return report


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _parse_box_flag(text: str) -> Box:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(
            "box must be 'k1min,k1max,k2min,k2max' (rational strings)"
        )
    return Box(*parts)


def _parse_seed_flag(text: str) -> tuple[str, str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("seed must be 'k1,k2' (rational strings)")
    return (parts[0], parts[1])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabregion",
        description="Exact stability-region analysis of two-gain polynomial families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--input", required=True, help="instance JSON file")
        p.add_argument("--box", type=_parse_box_flag, default=None,
                       help="scan window 'k1min,k1max,k2min,k2max'")
        p.add_argument("--grid", type=int, default=101,
                       help="grid resolution per axis (default 101)")
        p.add_argument("--seed", type=_parse_seed_flag, default=None,
                       help="certification seed 'k1,k2' (default: auto)")
        p.add_argument("--trials", type=int, default=200,
                       help="convexity-probe midpoint trials per component")
        p.add_argument("--workers", type=int, default=None,
                       help="parallel scan processes (default: cpu count)")
        p.add_argument("--svg", default=None, help="write an SVG picture here")
        p.add_argument("--pgm", default=None, help="write a PGM raster here")

    analyze = sub.add_parser("analyze", help="full pipeline with JSON report")
    add_common(analyze)
    analyze.add_argument("--out", default=None, help="report JSON path (default stdout)")
    analyze.add_argument("--require-certificate", action="store_true",
                         help="exit 3 unless an inclusion certificate is obtained")

    plot = sub.add_parser("plot", help="scan, trace and render only")
    add_common(plot)

    certify = sub.add_parser("certify", help="run through certification and print status")
    add_common(certify)
    certify.add_argument("--require-certificate", action="store_true",
                         help="exit 3 unless an inclusion certificate is obtained")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    import os

    workers = args.workers if args.workers else (os.cpu_count() or 1)
    config = RunConfig(
        input=args.input,
        box=args.box,
        resolution=args.grid,
        seed=args.seed,
        trials=args.trials,
        out=getattr(args, "out", None),
        svg=args.svg,
        pgm=args.pgm,
        require_certificate=getattr(args, "require_certificate", False),
        workers=workers,
    )
    try:
        report = run_analyze(config)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc.cause, InvalidInstanceError):
            return EXIT_DEGENERATE
        return 1
    except InvalidInstanceError as exc:
        print(f"error: [parse] {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.command == "analyze" and not config.out:
        print(report.dumps())
    elif args.command == "certify":
        status = report.certificate["status"] if report.certificate else "no-seed"
        print(f"certificate: {status}")
    else:
        counts = report.grid
        print(
            f"scan {counts['resolution']}x{counts['resolution']}: "
            f"{counts['stable']} stable, {counts['unstable']} unstable, "
            f"{counts['boundary']} boundary; "
            f"{len(report.components)} component(s)"
        )

    if config.require_certificate:
        status = report.certificate["status"] if report.certificate else None
        if status != CERTIFIED_SUBSET:
            return EXIT_NOT_CERTIFIED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
