"""Exact-arithmetic certification of two infinite families of bielliptic
ball-quotient compactifications.

The library recomputes, over the field Q(rho), every numerical claim
behind the constructions: intersection point sets on product tori, blow-up
invariants, log-Chern equality, exact hyperbolic volumes, cusp counts and
betti-number constraints.
"""

from .eisenstein import ONE, RHO, RHO2, ZERO, EisensteinNumber, Rational, eis
from .lattices import (
    IntegerMatrix2x2,
    Lattice,
    TorusPoint,
    coset_representatives,
    smith_normal_form,
)
from .curves import (
    GraphCurve,
    Intersection,
    ProductPoint,
    ProductTorus,
    TorusAutomorphism,
    VerticalFiber,
    apply_auto_to_curve,
    automorphism_order,
    intersect_graph_fiber,
    intersect_graphs,
    is_free,
    orbit_of_curves,
    orbit_of_points,
)
from .surfaces import (
    BMYClass,
    CurveRecord,
    ExactVolume,
    LogPair,
    NefReport,
    QuotientOrbits,
    SurfaceModel,
    blow_up,
    bmy_classify,
    cusp_count,
    etale_quotient,
    k_dot,
    log_chern,
    nef_numerical_check,
    volume_from_chi,
)
from .homology import (
    BettiVector,
    betti_of_open,
    blown_bielliptic_betti,
    fibration_sequence_report,
    free_rank_of_punctured_surface,
    mv_tables,
)
from .families import (
    BdFInvalid,
    BdFType,
    ConstructionReport,
    albanese_data,
    bdf_catalog,
    bdf_classify,
    build_gamma_family,
    build_lambda_family,
    covering_report,
    fiber_report,
)

__version__ = "0.1.0"
