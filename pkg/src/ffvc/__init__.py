"""VC-dimension of dot-product hypothesis classes over F_q^d.

h_y(x) = 1 iff x.y = t, for y ranging over a point set E in F_q^d.
"""

__version__ = "0.1.0"

from .ffield import FieldElement, FieldSpec, make_field
from .geometry import Basis, dot, hyperplane_solutions, index_point, point_index, rank_of
from .incidence import edge_count, psi, residual_check
from .pointset import GenSpec, PointSet, generate, read_pointset, write_pointset
from .shatter import (
    count_bad_stars,
    find_shattered_dset,
    greedy_independent_subset,
    is_bad,
    is_shattered_direct,
    is_shattered_stars,
    vc_dimension,
    witness_set,
)
from .stars import count_indep_dstars, count_kstars, star_census

__all__ = [
    "Basis", "FieldElement", "FieldSpec", "GenSpec", "PointSet",
    "count_bad_stars", "count_indep_dstars", "count_kstars", "dot", "edge_count",
    "find_shattered_dset", "generate", "greedy_independent_subset", "hyperplane_solutions",
    "index_point", "is_bad", "is_shattered_direct", "is_shattered_stars", "make_field",
    "point_index", "psi", "rank_of", "read_pointset", "residual_check", "star_census",
    "vc_dimension", "witness_set", "write_pointset",
]
