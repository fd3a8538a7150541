"""Arc systems on punctured surfaces via ideal triangulations."""

from .arcs import (
    Arc,
    ClosedCurve,
    RawPath,
    Strand,
    comb_to_edge,
    edge_link_curve,
    enumerate_arcs,
    intersection_number,
    puncture_link_curve,
    transport,
    transport_arc,
    transport_curve,
)
from .errors import (
    ArcComplexError,
    BallTooSmall,
    CertificateError,
    InternalContractError,
    InvalidArc,
    InvalidTriangulation,
    NotFlippable,
    TriangulationMismatch,
)
from .triangulation import (
    IdealTriangulation,
    base_triangulation,
    side_of,
    slot_id,
    square_torus,
    three_punctured_sphere,
    tri_of,
)

__all__ = [
    "Arc",
    "ArcComplexError",
    "BallTooSmall",
    "CertificateError",
    "ClosedCurve",
    "IdealTriangulation",
    "InternalContractError",
    "InvalidArc",
    "InvalidTriangulation",
    "NotFlippable",
    "RawPath",
    "Strand",
    "TriangulationMismatch",
    "base_triangulation",
    "comb_to_edge",
    "edge_link_curve",
    "enumerate_arcs",
    "intersection_number",
    "puncture_link_curve",
    "side_of",
    "slot_id",
    "square_torus",
    "three_punctured_sphere",
    "transport",
    "transport_arc",
    "transport_curve",
    "tri_of",
]
