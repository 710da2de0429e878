"""Renormalised conical zeta values in exact arithmetic.

Lattice cones and their coalgebra, meromorphic germs with linear poles,
algebraic Birkhoff factorisation, and the two renormalisation schemes
(multivariate germs, and Laurent series along a direction) for conical and
multiple zeta values at nonpositive arguments.
"""
from .arith import InnerProduct, Lattice, STANDARD, inner_product, lattice_image, \
    lattice_index, lattice_intersection, orthogonal_project, primitive_representative
from .birkhoff import CoalgebraOracle, TargetAlgebra, birkhoff_split, convolution, \
    convolution_inverse
from .coalgebra import UNIT, ColouredLatticeCone, coderivation, coproduct, \
    coproduct_coloured, counit, degree, reduced_coproduct
from .cones import Cone, LatticeCone, Subdivision, chen_cone, faces, is_smooth, \
    is_strongly_convex, make_lattice_cone, open_face_cover, simplicial_subdivide, \
    smooth_subdivide, stellar_subdivide, transverse_cone
from .errors import CzvError
from .germs import LaurentSeries, MeromorphicJet, eval_zero, h_jet, pi_plus, pole_factor, \
    restrict_direction, taylor_coefficient
from .renormalise import compare_schemes, exp_integral, exp_sum_open, mu_open_projection, \
    mu_via_birkhoff, mzv_ren, zeta_ren, zeta_ren_univariate

__all__ = [
    "InnerProduct", "Lattice", "STANDARD", "inner_product", "lattice_image", "lattice_index",
    "lattice_intersection", "orthogonal_project", "primitive_representative",
    "CoalgebraOracle", "TargetAlgebra", "birkhoff_split", "convolution", "convolution_inverse",
    "UNIT", "ColouredLatticeCone", "coderivation", "coproduct", "coproduct_coloured", "counit",
    "degree", "reduced_coproduct", "Cone", "LatticeCone", "Subdivision", "chen_cone", "faces",
    "is_smooth", "is_strongly_convex", "make_lattice_cone", "open_face_cover",
    "simplicial_subdivide", "smooth_subdivide", "stellar_subdivide", "transverse_cone",
    "CzvError", "LaurentSeries", "MeromorphicJet", "eval_zero", "h_jet", "pi_plus",
    "pole_factor", "restrict_direction", "taylor_coefficient", "compare_schemes",
    "exp_integral", "exp_sum_open", "mu_open_projection", "mu_via_birkhoff", "mzv_ren",
    "zeta_ren", "zeta_ren_univariate",
]

__version__ = "0.1.0"
