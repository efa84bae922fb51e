"""Plane Cremona maps: homaloidal types, Sarkisov links, and polynomial realizations."""

from .cluster import INF, Cluster, ClusterPoint, canonical_threshold, lambda_e
from .errors import CremonaError
from .links import (
    FreshPoint,
    Link,
    LinkTrace,
    TraceStep,
    apply_A,
    apply_AInv,
    apply_B,
    apply_C,
    compose_quadratic,
    factorize,
    recompose,
)
from .marked_system import (
    Fano3Data,
    HomaloidalType,
    MarkedSystem,
    SarkisovDegree,
    Surface,
    classify,
    fano3_classify,
    format_type,
    from_homaloidal,
    noether_fano_certificate,
    noether_inequality,
    parse_type,
    sarkisov_degree,
    validate_homaloidal,
)
from .realization import (
    RationalMap,
    base_points,
    compose,
    factor_by_quadratics,
    homaloidal_type_of,
    quadratic_from_points,
    random_corpus,
    verify_factorization,
)

__all__ = [
    "INF", "Cluster", "ClusterPoint", "canonical_threshold", "lambda_e", "CremonaError",
    "FreshPoint", "Link", "LinkTrace", "TraceStep", "apply_A", "apply_AInv", "apply_B",
    "apply_C", "compose_quadratic", "factorize", "recompose", "Fano3Data", "HomaloidalType",
    "MarkedSystem", "SarkisovDegree", "Surface", "classify", "fano3_classify", "format_type",
    "from_homaloidal", "noether_fano_certificate", "noether_inequality", "parse_type",
    "sarkisov_degree", "validate_homaloidal", "RationalMap", "base_points", "compose",
    "factor_by_quadratics", "homaloidal_type_of", "quadratic_from_points", "random_corpus",
    "verify_factorization",
]
