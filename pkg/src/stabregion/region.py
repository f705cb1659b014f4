"""Grid scans of the gain plane, components, convexity probing and rendering.

Grid nodes are exact rationals (box corners plus integer subdivisions),
so every classification is exact; floating point appears only when
geometry is converted to SVG/PGM output.  Stable nodes are grouped with
4-connectivity.  Convexity is probed by sampling midpoints of random
stable pairs; it is evidence, not proof (the certificate pencil is the
proof when it applies).
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .bezout import QuadraticMatrixPencil, hermite_pencil
from .certify import BOUNDARY, STABLE, UNSTABLE, classify_point, is_positive_definite
from .curves import AffinePencil, CurveData
from .polynomials import ProblemInstance, parse_rational, RationalLike

KPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True, slots=True)
class Box:
    """Axis-aligned rational box in the gain plane."""

    k1_min: Fraction
    k1_max: Fraction
    k2_min: Fraction
    k2_max: Fraction

    def __init__(
        self,
        k1_min: RationalLike,
        k1_max: RationalLike,
        k2_min: RationalLike,
        k2_max: RationalLike,
    ):
        vals = [parse_rational(v) for v in (k1_min, k1_max, k2_min, k2_max)]
        if vals[0] >= vals[1] or vals[2] >= vals[3]:
            raise ValueError("box must satisfy min < max on both axes")
        for name, v in zip(("k1_min", "k1_max", "k2_min", "k2_max"), vals):
            object.__setattr__(self, name, v)

    def node(self, i1: int, i2: int, resolution: int) -> KPoint:
        steps = resolution - 1
        k1 = self.k1_min + (self.k1_max - self.k1_min) * Fraction(i1, steps)
        k2 = self.k2_min + (self.k2_max - self.k2_min) * Fraction(i2, steps)
        return (k1, k2)

    def contains(self, k: KPoint) -> bool:
        return (
            self.k1_min <= k[0] <= self.k1_max and self.k2_min <= k[1] <= self.k2_max
        )

    @property
    def diameter(self) -> Fraction:
        return max(self.k1_max - self.k1_min, self.k2_max - self.k2_min)


@dataclass(frozen=True, slots=True)
class GridScan:
    """Exact classification of every node of a regular grid.

    Flat tuples are indexed ``i2 * resolution + i1`` (i1 along k1).
    """

    box: Box
    resolution: int
    labels: tuple[str, ...]
    h_pd: tuple[bool, ...]
    c_pd: tuple[bool, ...] | None

    def index(self, i1: int, i2: int) -> int:
        return i2 * self.resolution + i1

    def label_at(self, i1: int, i2: int) -> str:
        return self.labels[self.index(i1, i2)]

    def node(self, i1: int, i2: int) -> KPoint:
        return self.box.node(i1, i2, self.resolution)

    def counts(self) -> dict[str, int]:
        out = {STABLE: 0, UNSTABLE: 0, BOUNDARY: 0}
        for label in self.labels:
            out[label] += 1
        return out


def _scan_chunk(args) -> list[tuple[str, bool, bool | None]]:
    inst, h_pencil, c_pencil, box, resolution, rows = args
    out = []
    for i2 in rows:
        for i1 in range(resolution):
            pc = classify_point(inst, h_pencil, c_pencil, box.node(i1, i2, resolution))
            out.append((pc.verdict, pc.h_pd, pc.c_pd))
    return out


def scan_grid(
    inst: ProblemInstance,
    box: Box,
    resolution: int,
    h_pencil: QuadraticMatrixPencil | None = None,
    c_pencil: AffinePencil | None = None,
    workers: int = 1,
) -> GridScan:
    """Classify every node of a resolution x resolution grid over the box.

    Rows can be classified in parallel (`workers` processes); the result
    is deterministic either way.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    if h_pencil is None:
        h_pencil = hermite_pencil(inst)

    rows = list(range(resolution))
    if workers > 1:
        chunk = max(1, len(rows) // (workers * 4))
        parts = [rows[i : i + chunk] for i in range(0, len(rows), chunk)]
        args = [(inst, h_pencil, c_pencil, box, resolution, part) for part in parts]
        results: list[tuple[str, bool, bool | None]] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_chunk, args):
                results.extend(part)
    else:
        results = _scan_chunk((inst, h_pencil, c_pencil, box, resolution, rows))

    labels = tuple(r[0] for r in results)
    h_flags = tuple(r[1] for r in results)
    c_flags = None
    if c_pencil is not None:
        c_flags = tuple(bool(r[2]) for r in results)
    return GridScan(
        box=box, resolution=resolution, labels=labels, h_pd=h_flags, c_pd=c_flags
    )


def certificate_flags(scan: GridScan, c_pencil: AffinePencil) -> GridScan:
    """Return a copy of the scan with the pencil-definiteness flags filled."""
    res = scan.resolution
    flags = []
    for i2 in range(res):
        for i1 in range(res):
            flags.append(c_pencil.pd_at(*scan.node(i1, i2)))
    return replace(scan, c_pd=tuple(flags))


@dataclass(frozen=True, slots=True)
class Component:
    """One 4-connected component of stable grid nodes."""

    id: int
    cells: tuple[tuple[int, int], ...]
    sample: KPoint
    sample_interior: bool
    convexity: str | None = None
    certified: bool | None = None


@dataclass(frozen=True, slots=True)
class ComponentSet:
    components: tuple[Component, ...]

    @property
    def count(self) -> int:
        return len(self.components)


def connected_components(scan: GridScan) -> ComponentSet:
    """Group stable nodes with 4-connectivity, in deterministic scan order.

    Each component records one sample node: the first cell all of whose
    four neighbours exist and are stable, else the first cell (flagged as
    near-boundary).
    """
    res = scan.resolution
    seen = [False] * (res * res)
    components: list[Component] = []

    def neighbours(i1: int, i2: int):
        if i1 > 0:
            yield i1 - 1, i2
        if i1 + 1 < res:
            yield i1 + 1, i2
        if i2 > 0:
            yield i1, i2 - 1
        if i2 + 1 < res:
            yield i1, i2 + 1

    def interior(i1: int, i2: int) -> bool:
        if i1 == 0 or i2 == 0 or i1 == res - 1 or i2 == res - 1:
            return False
        return all(scan.label_at(*nb) == STABLE for nb in neighbours(i1, i2))

    for start2 in range(res):
        for start1 in range(res):
            idx = scan.index(start1, start2)
            if seen[idx] or scan.labels[idx] != STABLE:
                continue
            queue = [(start1, start2)]
            seen[idx] = True
            cells: list[tuple[int, int]] = []
            while queue:
                i1, i2 = queue.pop()
                cells.append((i1, i2))
                for n1, n2 in neighbours(i1, i2):
                    nidx = scan.index(n1, n2)
                    if not seen[nidx] and scan.labels[nidx] == STABLE:
                        seen[nidx] = True
                        queue.append((n1, n2))
            cells.sort(key=lambda c: (c[1], c[0]))
            sample_cell = None
            for cell in cells:
                if interior(*cell):
                    sample_cell = cell
                    break
            sample_interior = sample_cell is not None
            if sample_cell is None:
                sample_cell = cells[0]
            components.append(
                Component(
                    id=len(components),
                    cells=tuple(cells),
                    sample=scan.node(*sample_cell),
                    sample_interior=sample_interior,
                )
            )
    return ComponentSet(components=tuple(components))


CONSISTENT_WITH_CONVEX = "consistent-with-convex"
NONCONVEX = "nonconvex"


@dataclass(frozen=True, slots=True)
class ProbeResult:
    verdict: str
    witness: tuple[KPoint, KPoint] | None = None


def convexity_probe(
    inst: ProblemInstance,
    scan: GridScan,
    component: Component,
    trials: int,
    h_pencil: QuadraticMatrixPencil | None = None,
    seed: int = 0,
) -> ProbeResult:
    """Probe a component for convexity by exact midpoint classification.

    Draws random pairs of stable nodes from the component and classifies
    their exact rational midpoint; any unstable or boundary midpoint is a
    nonconvexity witness.  A clean run is consistent with convexity, not
    a proof of it.
    """
    if not component.cells:
        raise ValueError("cannot probe an empty component")
    if h_pencil is None:
        h_pencil = hermite_pencil(inst)
    rng = random.Random(seed)
    cells = component.cells
    for _ in range(trials):
        a = scan.node(*rng.choice(cells))
        b = scan.node(*rng.choice(cells))
        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        verdict = classify_point(inst, h_pencil, None, mid).verdict
        if verdict != STABLE:
            return ProbeResult(verdict=NONCONVEX, witness=(a, b))
    return ProbeResult(verdict=CONSISTENT_WITH_CONVEX)


# ---------------------------------------------------------------------------
# boundary tracing
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Polyline:
    """Connected piece of the boundary, with exact rational vertices."""

    kind: str  # "curve" or "line"
    points: tuple[KPoint, ...]


def _root_bound(p) -> Fraction:
    # Cauchy bound: every real root satisfies |t| <= 1 + max |c_i / c_lead|.
    lead = abs(p.leading_coefficient)
    bound = Fraction(0)
    for c in p.coeffs[:-1]:
        bound = max(bound, abs(c) / lead)
    return 1 + bound


def _refine_pole(q0, lo: Fraction, hi: Fraction, steps: int = 24) -> list[Fraction]:
    # Bisect a sign change of q0 to generate sample points crowding the pole.
    extras = []
    flo = q0.eval(lo)
    for _ in range(steps):
        mid = (lo + hi) / 2
        extras.append(mid)
        fmid = q0.eval(mid)
        if fmid == 0:
            break
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return extras


def trace_boundary(
    curve: CurveData, box: Box, t_samples: int = 400
) -> tuple[Polyline, ...]:
    """Sample the swept boundary curve and clip the boundary line to the box.

    The sweep parameter runs over a symmetric range covering all real
    poles (negative values complete the real curve beyond the physical
    frequency branch).  Polylines are split at poles and at box exits;
    extra samples are inserted near each pole.  All sampled vertices are
    exact; a vertex is kept when it lies within a one-diameter margin of
    the box.
    """
    if t_samples < 8:
        raise ValueError("need at least 8 sweep samples")
    q0 = curve.q0
    span = _root_bound(q0)
    for q in (curve.q1, curve.q2):
        if not q.is_zero:
            span = max(span, _root_bound(q))
    span = max(span, box.diameter, Fraction(4))
    span = 2 * span

    ts = [
        -span + 2 * span * Fraction(j, t_samples - 1) for j in range(t_samples)
    ]
    values = [q0.eval(t) for t in ts]
    extra: list[Fraction] = []
    for j in range(len(ts) - 1):
        if values[j] == 0 or values[j + 1] == 0:
            continue
        if (values[j] < 0) != (values[j + 1] < 0):
            extra.extend(_refine_pole(q0, ts[j], ts[j + 1]))
    ts = sorted(set(ts) | set(extra))

    margin = box.diameter
    lo1, hi1 = box.k1_min - margin, box.k1_max + margin
    lo2, hi2 = box.k2_min - margin, box.k2_max + margin

    polylines: list[Polyline] = []
    run: list[KPoint] = []
    prev_sign: int | None = None

    def flush():
        nonlocal run
        if len(run) >= 2:
            polylines.append(Polyline(kind="curve", points=tuple(run)))
        run = []

    for t in ts:
        den = q0.eval(t)
        if den == 0:
            flush()
            prev_sign = None
            continue
        sign = 1 if den > 0 else -1
        if prev_sign is not None and sign != prev_sign:
            flush()
        prev_sign = sign
        k1 = curve.q1.eval(t) / den
        k2 = curve.q2.eval(t) / den
        if lo1 <= k1 <= hi1 and lo2 <= k2 <= hi2:
            run.append((k1, k2))
        else:
            flush()
    flush()

    line = curve.line
    if not line.is_constant:
        seg = _clip_line_to_box(line, box)
        if seg is not None:
            polylines.append(Polyline(kind="line", points=seg))
    return tuple(polylines)


def _clip_line_to_box(line, box: Box) -> tuple[KPoint, KPoint] | None:
    # Intersect c0 + c1*k1 + c2*k2 = 0 with the box edges.
    hits: list[KPoint] = []

    def push(k1: Fraction, k2: Fraction):
        point = (k1, k2)
        if box.contains(point) and point not in hits:
            hits.append(point)

    c0, c1, c2 = line.c0, line.c1, line.c2
    for k1 in (box.k1_min, box.k1_max):
        if c2 != 0:
            push(k1, -(c0 + c1 * k1) / c2)
    for k2 in (box.k2_min, box.k2_max):
        if c1 != 0:
            push(-(c0 + c2 * k2) / c1, k2)
    if len(hits) < 2:
        return None
    hits.sort()
    return (hits[0], hits[-1])


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

PGM_STABLE = 200
PGM_UNSTABLE = 255
PGM_BOUNDARY = 0


@dataclass(frozen=True, slots=True)
class RenderStyle:
    width: int = 640
    height: int = 640
    margin: int = 48
    stable_fill: str = "#c8c8c8"
    boundary_fill: str = "#404040"
    curve_color: str = "#1040c0"
    line_color: str = "#c04010"


@dataclass(frozen=True, slots=True)
class RenderResult:
    svg: str
    pgm: bytes


def render(
    scan: GridScan,
    components: ComponentSet | None,
    polylines: Sequence[Polyline],
    style: RenderStyle = RenderStyle(),
) -> RenderResult:
    """Deterministic SVG and PGM pictures of a scan with the curve overlay.

    Stable cells are filled gray, boundary cells dark; the traced curve
    and line are drawn on top.  The PGM raster has one pixel per grid
    node with fixed gray levels (stable 200, unstable 255, boundary 0)
    and the first pixel row at the top of the k2 axis.
    """
    res = scan.resolution
    box = scan.box
    plot_w = style.width - 2 * style.margin
    plot_h = style.height - 2 * style.margin
    span1 = float(box.k1_max - box.k1_min)
    span2 = float(box.k2_max - box.k2_min)

    def to_px(k1: Fraction, k2: Fraction) -> tuple[float, float]:
        x = style.margin + (float(k1) - float(box.k1_min)) / span1 * plot_w
        y = style.margin + (float(box.k2_max) - float(k2)) / span2 * plot_h
        return x, y

    cell_w = plot_w / (res - 1)
    cell_h = plot_h / (res - 1)

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width}" '
        f'height="{style.height}" viewBox="0 0 {style.width} {style.height}">'
    )
    out.append(f'<rect width="{style.width}" height="{style.height}" fill="white"/>')

    # Stable and boundary cells, merged into per-row runs.
    for value, fill in ((STABLE, style.stable_fill), (BOUNDARY, style.boundary_fill)):
        for i2 in range(res):
            i1 = 0
            while i1 < res:
                if scan.label_at(i1, i2) != value:
                    i1 += 1
                    continue
                start = i1
                while i1 < res and scan.label_at(i1, i2) == value:
                    i1 += 1
                k_start = scan.node(start, i2)
                x0, y0 = to_px(k_start[0], k_start[1])
                width = (i1 - start) * cell_w
                out.append(
                    f'<rect x="{x0 - cell_w / 2:.2f}" y="{y0 - cell_h / 2:.2f}" '
                    f'width="{width:.2f}" height="{cell_h:.2f}" fill="{fill}"/>'
                )

    # Frame and axis labels.
    out.append(
        f'<rect x="{style.margin}" y="{style.margin}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>'
    )
    labels = [
        (style.margin, style.height - style.margin / 4, str(box.k1_min), "start"),
        (
            style.width - style.margin,
            style.height - style.margin / 4,
            str(box.k1_max),
            "end",
        ),
        (style.margin / 4, style.height - style.margin, str(box.k2_min), "start"),
        (style.margin / 4, style.margin, str(box.k2_max), "start"),
    ]
    for x, y, text, anchor in labels:
        out.append(
            f'<text x="{x:.1f}" y="{y:.1f}" font-size="12" '
            f'text-anchor="{anchor}" font-family="monospace">{text}</text>'
        )

    for pl in polylines:
        color = style.curve_color if pl.kind == "curve" else style.line_color
        pts = " ".join(
            f"{x:.3f},{y:.3f}" for x, y in (to_px(*p) for p in pl.points)
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )

    if components is not None:
        for comp in components.components:
            x, y = to_px(*comp.sample)
            out.append(
                f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="black"/>'
            )
            out.append(
                f'<text x="{x + 5:.2f}" y="{y - 5:.2f}" font-size="12" '
                f'font-family="monospace">S{comp.id}</text>'
            )
    out.append("</svg>")
    svg = "\n".join(out) + "\n"

    shade = {STABLE: PGM_STABLE, UNSTABLE: PGM_UNSTABLE, BOUNDARY: PGM_BOUNDARY}
    body = bytearray()
    for i2 in range(res - 1, -1, -1):
        for i1 in range(res):
            body.append(shade[scan.label_at(i1, i2)])
    pgm = b"P5\n%d %d\n255\n" % (res, res) + bytes(body)
    return RenderResult(svg=svg, pgm=pgm)
