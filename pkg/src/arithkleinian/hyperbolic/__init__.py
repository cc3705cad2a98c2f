from .automorphic import (
    CuspExpansion,
    SymPower,
    evaluate_cusp_expansion,
    fourier_bessel_term,
    multiplier_h2,
    multiplier_h3,
    slash,
    sym_power,
    weight2_matrix,
)
from .bessel import bessel_k
from .geometry import (
    MoebiusMap,
    PointH2,
    PointH3,
    cosh_h2_distance,
    cosh_h3_distance,
    h2_act,
    h2_distance,
    h3_act_components,
    h3_act_quaternion,
    h3_distance,
    hamilton_embed,
)
