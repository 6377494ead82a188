"""Permutation groups and string C-groups: verification, constructions,
exhaustive enumeration up to isomorphism (or conjugacy) and duality, and
rank bounds."""

from .perm import Permutation, classify, compose, element_order, inverse, parse_cycles
from .group import BlockSystem, PermGroup
from .cgroup import (
    CGroupReport,
    InvolutionString,
    check_intersection_property,
    check_string_property,
    dual,
    is_independent,
    parabolic,
    schlafli_type,
    verify,
)
from .canon import are_equivalent, are_isomorphic
from .enumeration import SearchSpec, enumerate_in_group, enumerate_string_cgroups
from .bounds import bound_report, maroti_order_bound, primitive_rank_bound

__version__ = "0.1.0"
