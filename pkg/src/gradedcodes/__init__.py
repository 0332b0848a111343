"""Exact tools for graded codes on weighted projective spaces.

The package builds up from finite-field arithmetic (:mod:`gradedcodes.gf`)
through weighted projective geometry (:mod:`gradedcodes.wgeom`), the
graded coordinate ring (:mod:`gradedcodes.gpoly`), classical evaluation
codes (:mod:`gradedcodes.lincode`), CSS quantum codes
(:mod:`gradedcodes.quantum`), chain-complex codes
(:mod:`gradedcodes.chain`), and the orbifold-corrected Singleton bound
(:mod:`gradedcodes.orbifold`).  Everything is exact and deterministic;
there is no randomness anywhere.
"""

from .gf import FieldSpec, field_create, field_from_order, parse_field_spec
from .wgeom import (
    Height,
    OrbifoldData,
    WeightSystem,
    WPoint,
    canonical_rep,
    count_wp_points_formula,
    enumerate_wp_points,
    serre_bound,
    singular_census,
    weighted_height,
)
from .gpoly import (
    GradedPolynomial,
    Hypersurface,
    affine_points,
    den,
    enumerate_monomials,
    hypersurface_count,
    hypersurface_points,
    is_weighted_homogeneous,
    projective_solution_classes,
    zeta_counts,
    zeta_series,
)
from .matrix import MatrixGF
from .lincode import (
    DistanceResult,
    InnerProduct,
    LinearCode,
    dual_code,
    evaluation_code,
    greedy_isotropic_subcode,
    is_self_orthogonal,
    min_distance,
    weight_distribution,
    wprm_plane_dimension,
)
from .quantum import (
    CssCode,
    DistanceInfo,
    commutation_check,
    css_from_pair,
    css_from_self_orthogonal,
    quantum_distance,
    witness_upper_bound,
)
from .chain import (
    ChainComplex,
    Filtration,
    HomologyReport,
    height_filtration,
    homological_code,
    homology,
    load_complex,
    restrict_to_grades,
    toric_code,
    toric_complex,
    toric_logical_witnesses,
)
from .orbifold import BoundReport, bound_report, chi_orb, epsilon, refined_bound

__version__ = "0.1.0"
