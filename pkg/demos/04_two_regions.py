#!/usr/bin/env python3
"""A quartic family whose stable set changes character with a plant parameter.

p0 = s^4 + 2s^3 + 10s^2 + 10s + 14 + 2a,  p1 = 2s^3 + 2s - 3/10,
p2 = 2s + 1.  At a = 1 the stable gains split into two components and
the one containing the origin is exactly an LMI region.  At a = 0 the
stable set is a single nonconvex blob and the pencil's feasible set
leaks outside it: certification correctly reports no inclusion, and the
midpoint probe exhibits a nonconvexity witness.
"""

from fractions import Fraction
from pathlib import Path

from stabregion import (
    Box,
    UniPoly,
    assemble_certificate_pencil,
    build_curve_data,
    certify_lmi_region,
    connected_components,
    convexity_probe,
    normalize_monic,
    render,
    scan_grid,
    trace_boundary,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def family(a):
    a = Fraction(a)
    return normalize_monic(
        UniPoly((14 + 2 * a, 10, 10, 2, 1), "s"),
        UniPoly((Fraction(-3, 10), 2, 0, 2), "s"),
        UniPoly((1, 2), "s"),
    )


box = Box(-5, 30, -30, 30)

for a in (1, 0):
    inst = family(a)
    data = build_curve_data(inst)
    print(f"--- parameter a = {a} ---")
    print(f"line: {data.line} = 0   (sweep cleared by factor {data.scaling})")
    asm = assemble_certificate_pencil(inst, data.line, data.pencil, (0, 0))
    scan = scan_grid(inst, box, 61, c_pencil=asm.pencil)
    components = connected_components(scan)
    print(f"stable components in the window: {components.count}")
    samples = [scan.node(i, j) for j in range(61) for i in range(61)]
    cert = certify_lmi_region(inst, asm, (0, 0), samples)
    print(f"certificate from the origin: {cert.status}")
    if cert.status != "certified-lmi-subset":
        print(f"  note: {cert.notes[-1]}")
    biggest = max(components.components, key=lambda c: len(c.cells))
    probe = convexity_probe(inst, scan, biggest, trials=500)
    print(f"largest component midpoint probe: {probe.verdict}")
    if probe.witness:
        (w1, w2), (v1, v2) = probe.witness
        print(f"  witness pair: ({w1}, {w2}) and ({v1}, {v2})")
    picture = render(scan, components, trace_boundary(data, box, 400))
    (OUT / f"two_regions_a{a}.svg").write_text(picture.svg, encoding="utf-8")
    (OUT / f"two_regions_a{a}.pgm").write_bytes(picture.pgm)
    print(f"wrote {OUT / f'two_regions_a{a}.svg'} and .pgm\n")
