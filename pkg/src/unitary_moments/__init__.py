"""Exact moments of derivatives of characteristic polynomials of Haar unitaries."""

from .algebra import Poly, RatFunc, barnes_g, poly_gcd, ratfunc_reduce
from .errors import (
    CapacityError,
    DegenerateSampleError,
    DimensionError,
    DomainError,
    InconsistencyError,
    MomentsError,
    PoleError,
    UnsupportedFeatureError,
)
from .hypergeom import HyperParams, egf_check, hyper_pfq_scalar
from .moments import (
    MomentKind,
    MomentRecord,
    m_ratio_finite,
    m_ratio_finite_polyN,
    m_ratio_limit,
    m_ratio_limit_ratfunc,
    moment_zero_finite,
    moment_zero_limit,
    v_moment_finite,
    v_ratio_limit_ratfunc,
)
from .partitions import Partition, enumerate_partitions

__version__ = "0.1.0"
