"""
Lie package for the Zhelobenko/Kostant verification engine
Contains root systems, Chevalley-basis Lie algebras and the principal filtration
"""

from .root_system import (
    Basis, LieType, RootSystem, Weight, build_root_system, cartan_matrix, coroot, langlands_dual, rho,
    simple_reflection, weyl_group_order, weyl_orbit
)
from .chevalley import LieAlgebra, SL2Triple, ad_matrix, build_lie_algebra, principal_sl2
from .filtration import FiltrationFlag, exponents, principal_filtration

__all__ = [
    'LieType', 'RootSystem', 'Weight', 'Basis', 'build_root_system', 'cartan_matrix', 'coroot',
    'langlands_dual', 'rho', 'simple_reflection', 'weyl_orbit', 'weyl_group_order',
    'LieAlgebra', 'SL2Triple', 'ad_matrix', 'build_lie_algebra', 'principal_sl2',
    'FiltrationFlag', 'exponents', 'principal_filtration',
]
