"""Exact arithmetic for denominator lattices, arithmetic carriers, level
drafts, function groups, and integer piecewise-linear functions."""

from .adc import (
    AdcSet,
    RatRegion,
    ac,
    adc,
    adc_contains,
    adc_intersect_intervals,
    interval_region,
    point_region,
)
from .aspace import (
    AMapFin,
    FinASpace,
    check_amap,
    identity_amap,
    pair_into_product,
    product,
    product_projections,
    separate,
    verify_anormal,
)
from .divlat import (
    DivSet,
    den_rat,
    den_vec,
    div_set,
    divides,
    divisors,
    gcd_div,
    group_index,
    lcm_div,
)
from .draft import (
    Draft,
    DraftCheck,
    RatFunction,
    denominator_witness,
    embed,
    is_realisation,
    realize,
    refine_at,
    refine_sequence,
    separating_map,
    urysohn,
    validate_draft,
)
from .errors import MalformedInputError, PreconditionError
from .lgroup import (
    FnGroup,
    Term,
    completeness_check,
    eta_check,
    eval_term,
    max_of_group,
    render_term,
    seminorm,
    separates,
    sw_approximate,
    sw_conditions,
    value_group,
)
from .pwl import (
    IntPwl,
    pwl_combine,
    pwl_eval,
    pwl_is_amap,
    pwl_norm,
    pwl_sample,
    pwl_value_group,
)
from .rationals import Rat, format_rat, parse_rat, simplest_between, simplest_refinements

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
