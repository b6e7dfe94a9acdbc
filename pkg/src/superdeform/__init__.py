"""Exact symbolic verification of the osp(2|2) density-module calculus.

The package computes, over exact rationals: the supercommutative coordinate
algebra of R^{1|2} and its contact bracket; the osp(2|2) structure
constants; differential operators between weighted-density spaces and the
module action on them; operator-valued Lie superalgebra cochains with the
degree-0/1 coboundaries and the cup product; the catalog of explicit
1-cocycle families; exact rational coboundary certificates; and
integrability and flatness checks for parametrized deformations of the
module structure on truncated symbol spaces.
"""

__version__ = "0.1.0"

from .grassmann import Parity, ParityError, SuperFunction, XPoly
from .contact import ContactElement, poisson, BASIS_ORDER
from .operators import DiffOperator, WeightedDensity
from .cohomology import Cochain1, Cochain2, cup, delta0, delta1, is_cocycle
from .catalog import CocycleId, build, phi
from .linsolve import AnsatzSpec, LinearCertificate, solve_coboundary
from .deformation import (DeformationParams, check_integrability,
                          obstruction2, verify_flat)
