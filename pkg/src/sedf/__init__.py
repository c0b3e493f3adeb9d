"""Strong external difference families: verification, construction and
parameter classification over finite abelian groups."""

__version__ = "0.1.0"

from .groups import GroupSpec, enumerate_abelian_groups, parse_group_spec
from .cyclotomic import CycInt
from .designs import DifferenceFamily, verify_edf, verify_pds, verify_sedf
from .params import ParamSet, enumerate_params, feasible_ab_pairs, scvp_counts
from .filters import Verdict, classify_range, filter_classify, group_constraints

__all__ = [
    "__version__",
    "GroupSpec",
    "parse_group_spec",
    "enumerate_abelian_groups",
    "CycInt",
    "DifferenceFamily",
    "verify_sedf",
    "verify_edf",
    "verify_pds",
    "ParamSet",
    "enumerate_params",
    "feasible_ab_pairs",
    "scvp_counts",
    "Verdict",
    "filter_classify",
    "classify_range",
    "group_constraints",
]
