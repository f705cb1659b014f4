#!/usr/bin/env python3
"""Classic third-order two-gain family: s^3 + k1 s^2 + k2 s + 1.

The stable gains form the hyperbolic region k1 > 0, k1*k2 > 1.  This
walkthrough builds the Hermite pencil symbolically, decomposes the
boundary curve, and recovers the textbook 2x2 LMI description of the
region, then cross-checks everything against the exact Routh oracle on
a grid and renders the picture.
"""

from pathlib import Path

from stabregion import (
    Box,
    assemble_certificate_pencil,
    build_curve_data,
    connected_components,
    convexity_probe,
    hermite_pencil,
    normalize_monic,
    render,
    scan_grid,
    trace_boundary,
    verify_factorization,
    UniPoly,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

inst = normalize_monic(
    UniPoly((1, 0, 0, 1), "s"),  # s^3 + 1
    UniPoly((0, 0, 1), "s"),     # s^2  (multiplies k1)
    UniPoly((0, 1), "s"),        # s    (multiplies k2)
)

print("family: s^3 + k1*s^2 + k2*s + 1")

pencil = hermite_pencil(inst)
print("\nHermite matrix, symbolic in the gains:")
for row in pencil.entry_bipolys():
    print("   [" + ", ".join(f"{e}" for e in row) + "]")

data = build_curve_data(inst)
print(f"\nboundary line: {data.line}   (constant: no line in the gain plane)")
print(f"curve sweep:   k1 = ({data.q1})/({data.q0}),  k2 = ({data.q2})/({data.q0})")

report = verify_factorization(inst, data.line, data.pencil)
print(f"determinant identity: {report}")

asm = assemble_certificate_pencil(inst, data.line, data.pencil, seed=(2, 2))
print("\ncertificate pencil after sign normalization at the stable seed (2, 2):")
for row in asm.pencil.entry_bipolys():
    print("   [" + ", ".join(f"{e}" for e in row) + "]")
print("(congruent, after a row/column swap and one sign flip, to [[k1, 1], [1, k2]])")

box = Box(-1, 4, -1, 4)
scan = scan_grid(inst, box, 101, c_pencil=asm.pencil)
counts = scan.counts()
print(f"\n101x101 exact grid on [-1,4]^2: {counts}")

agree = all(
    (scan.labels[idx] == "stable") == scan.c_pd[idx]
    for idx in range(len(scan.labels))
    if scan.labels[idx] != "boundary"
)
print(f"pencil feasibility == Routh stability at every non-boundary node: {agree}")

components = connected_components(scan)
probe = convexity_probe(inst, scan, components.components[0], trials=200)
print(f"components: {components.count}; midpoint probe: {probe.verdict}")

picture = render(scan, components, trace_boundary(data, box, 400))
(OUT / "cubic_family.svg").write_text(picture.svg, encoding="utf-8")
(OUT / "cubic_family.pgm").write_bytes(picture.pgm)
print(f"\nwrote {OUT / 'cubic_family.svg'} and .pgm")
