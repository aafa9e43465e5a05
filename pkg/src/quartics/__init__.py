"""Count rational quartic curves on a sextic hypersurface in P(2,1,1,1,1).

The package enumerates the torus-fixed points of the Hilbert-scheme
component parameterizing the quartics (126 points over each invariant
hyperplane, 504 in total), attaches to each point its tangent and
bundle-fiber representations, and evaluates Bott's localization formula
in exact rational arithmetic.  The resulting count is 6028452.

Modules
-------
repring
    Laurent-monomial representation-ring arithmetic, invariant section
    spaces, ideal twists.
fixedpoints
    Fixed-point enumeration: Grassmannian stage, two blow-up stages,
    flat-limit ideals, assembly over the dual projective space.
bott
    Weight specialization and the exact localization sum.
cli
    The ``quartics`` command-line driver.
"""

from .bott import (
    DEFAULT_WEIGHTS,
    LocalizationResult,
    bott_sum,
    prod_weights,
    random_weight_search,
    validate_weights,
    weight_of,
)
from .fixedpoints import (
    BlowupCenterDatum,
    FixedPoint,
    assemble_h4,
    blowup_fixed_points,
    enumerate_h3,
    fiber_rep,
    grassmann_fixed_points,
    lemma_injectivity_check,
    limit_ideal_oracle,
    stage1_centers,
    stage2_centers,
)
from .repring import (
    LaurentMonomial,
    MonomialIdeal,
    RepElement,
    ideal_twist,
    invariant_sections,
    rep_add,
    rep_dual,
    rep_mul,
    rep_sub,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_WEIGHTS",
    "BlowupCenterDatum",
    "FixedPoint",
    "LaurentMonomial",
    "LocalizationResult",
    "MonomialIdeal",
    "RepElement",
    "assemble_h4",
    "blowup_fixed_points",
    "bott_sum",
    "enumerate_h3",
    "fiber_rep",
    "grassmann_fixed_points",
    "ideal_twist",
    "invariant_sections",
    "lemma_injectivity_check",
    "limit_ideal_oracle",
    "prod_weights",
    "random_weight_search",
    "rep_add",
    "rep_dual",
    "rep_mul",
    "rep_sub",
    "stage1_centers",
    "stage2_centers",
    "validate_weights",
    "weight_of",
]
