"""Machine-checkable certificates for the lower bounds on triangulation size."""

from .apex import check_apex_infeasible
from .c5 import C5Configuration, adjacent_pair_scan, enumerate_c5
from .certificate import Certificate
from .lemmas import check_no_acute_8, check_nonobtuse_lower_bound, check_size_parity, min_degree_bound
from .report import check_no_acute_10, main_theorem_report
from .sphere import CombinatorialTriangulation, enumerate_sphere_triangulations

__all__ = [
    "C5Configuration",
    "Certificate",
    "CombinatorialTriangulation",
    "adjacent_pair_scan",
    "check_apex_infeasible",
    "check_no_acute_10",
    "check_no_acute_8",
    "check_nonobtuse_lower_bound",
    "check_size_parity",
    "enumerate_c5",
    "enumerate_sphere_triangulations",
    "main_theorem_report",
    "min_degree_bound",
]
