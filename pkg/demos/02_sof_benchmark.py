#!/usr/bin/env python3
"""A benchmark static-output-feedback family with a convex stable region.

Family: p0 = s(s^2 - 13), p1 = s(s - 5), p2 = s + 1.  The boundary
splits into the line k2 = 0 and a conic swept by a rational map; the
determinant of the Hermite pencil factors through the square of the
conic's defining polynomial.  A single stable seed is enough to certify
the whole region as a convex LMI set.
"""

from fractions import Fraction
from pathlib import Path

from stabregion import (
    Box,
    UniPoly,
    assemble_certificate_pencil,
    build_curve_data,
    certify_lmi_region,
    classify_point,
    connected_components,
    hermite_pencil,
    normalize_monic,
    render,
    scan_grid,
    trace_boundary,
    verify_factorization,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

inst = normalize_monic(
    UniPoly((0, -13, 0, 1), "s"),
    UniPoly((0, -5, 1), "s"),
    UniPoly((1, 1), "s"),
)
data = build_curve_data(inst)

print(f"line component:  {data.line} = 0")
print(f"rational sweep:  k1 = ({data.q1})/({data.q0})")
print(f"                 k2 = ({data.q2})/({data.q0})")
print("curve pencil G(k):")
for row in data.pencil.entry_bipolys():
    print("   [" + ", ".join(f"{e}" for e in row) + "]")

report = verify_factorization(inst, data.line, data.pencil)
print(f"\ndet H = l * g^2 confirmed: {report}")

seed = (Fraction(2), Fraction(47))
h = hermite_pencil(inst)
point = classify_point(inst, h, None, seed)
print(f"\nseed {tuple(map(str, seed))}: {point.verdict}, Hermite PD: {point.h_pd}")

asm = assemble_certificate_pencil(inst, data.line, data.pencil, seed)
print(f"assembly: {'; '.join(asm.notes)}")

box = Box(0, 3, 0, 60)
scan = scan_grid(inst, box, 101, c_pencil=asm.pencil)
samples = [scan.node(i, j) for j in range(0, 101, 4) for i in range(0, 101, 4)]
cert = certify_lmi_region(inst, asm, seed, samples)
print(f"certificate: {cert.status}")

mismatches = sum(
    1
    for idx, label in enumerate(scan.labels)
    if label != "boundary" and (label == "stable") != scan.c_pd[idx]
)
print(f"grid cross-validation mismatches (101x101): {mismatches}")

components = connected_components(scan)
picture = render(scan, components, trace_boundary(data, box, 400))
(OUT / "sof_benchmark.svg").write_text(picture.svg, encoding="utf-8")
(OUT / "sof_benchmark.pgm").write_bytes(picture.pgm)
print(f"wrote {OUT / 'sof_benchmark.svg'} and .pgm")
