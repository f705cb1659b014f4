"""Exact stability-region analysis for two-gain polynomial families.

Given a family ``p0(s) + k1*p1(s) + k2*p2(s)`` the package computes, in
exact rational arithmetic throughout:

* the Hermite stability matrix and its symbolic gain pencil;
* the boundary curve split into a line and a rational sweep, with a
  symmetric affine determinantal pencil for the swept part;
* an LMI certificate (when one exists) that a connected component of the
  stable gains is convex and contained in the stability region;
* exact grid classifications, connected components, convexity probes,
  boundary traces and deterministic SVG/PGM renderings.
"""

__version__ = "0.1.0"

from .bezout import (
    QuadraticMatrixPencil,
    SymMatrix,
    bezout_matrix,
    hermite_matrix,
    hermite_pencil,
    resultant_bezout,
    resultant_sylvester,
)
from .certify import (
    Certificate,
    PointClass,
    certify_lmi_region,
    classify_point,
    is_positive_definite,
    routh_stable,
    unstable_root_count,
)
from .curves import (
    AffinePencil,
    AffineScalar,
    CertificateAssembly,
    CurveData,
    FactorizationReport,
    assemble_certificate_pencil,
    boundary_line,
    build_curve_data,
    curve_pencil,
    rational_parametrization,
    verify_factorization,
)
from .frontends import (
    PiPlant,
    SofTriple,
    faddeev_leverrier,
    pi_frontend,
    sof_frontend,
)
from .polynomials import (
    BiPoly,
    DegenerateInstanceError,
    InexactDivisionError,
    InvalidInstanceError,
    LeadingCoefficientError,
    ProblemInstance,
    UniPoly,
    eval_bipoly,
    eval_poly,
    normalize_monic,
    parse_rational,
    format_rational,
    poly_gcd,
    split_real_imag,
)
from .region import (
    Box,
    Component,
    ComponentSet,
    GridScan,
    Polyline,
    ProbeResult,
    RenderResult,
    RenderStyle,
    connected_components,
    convexity_probe,
    render,
    scan_grid,
    trace_boundary,
)

__all__ = [name for name in dir() if not name.startswith("_")]
