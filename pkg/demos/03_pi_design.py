#!/usr/bin/env python3
"""PI stabilization of a non-minimum-phase plant.

Plant (s-1)(s-2) / ((s+1)(s^2+s+1)) under a k1 + k2/s compensator.  The
stabilizing gain set is a small convex patch; the certificate pencil is
4x4 with the 2*k2 margin line as its scalar block.
"""

from fractions import Fraction
from pathlib import Path

from stabregion import (
    Box,
    PiPlant,
    UniPoly,
    assemble_certificate_pencil,
    build_curve_data,
    certify_lmi_region,
    connected_components,
    pi_frontend,
    render,
    scan_grid,
    trace_boundary,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

numerator = UniPoly((2, -3, 1), "s")       # (s-1)(s-2)
denominator = UniPoly((1, 2, 2, 1), "s")   # (s+1)(s^2+s+1)
inst = pi_frontend(PiPlant(a=denominator, b=numerator, form="k1+k2/s"))
print("closed-loop family:")
print(f"  p0 = {inst.p0}")
print(f"  p1 = {inst.p1}")
print(f"  p2 = {inst.p2}")

data = build_curve_data(inst)
print(f"\nboundary line: {data.line} = 0")

seed = (Fraction(-1, 10), Fraction(1, 10))
asm = assemble_certificate_pencil(inst, data.line, data.pencil, seed)
print(f"assembled 4x4 certificate pencil at seed {tuple(map(str, seed))}:")
for row in asm.pencil.entry_bipolys():
    print("   [" + ", ".join(f"{e}" for e in row) + "]")

box = Box(-1, 1, -1, 1)
scan = scan_grid(inst, box, 81, c_pencil=asm.pencil)
samples = [scan.node(i, j) for j in range(0, 81, 2) for i in range(0, 81, 2)]
cert = certify_lmi_region(inst, asm, seed, samples)
print(f"\ncertificate: {cert.status}")
print(f"grid counts: {scan.counts()}")

components = connected_components(scan)
picture = render(scan, components, trace_boundary(data, box, 400))
(OUT / "pi_design.svg").write_text(picture.svg, encoding="utf-8")
(OUT / "pi_design.pgm").write_bytes(picture.pgm)
print(f"wrote {OUT / 'pi_design.svg'} and .pgm")
