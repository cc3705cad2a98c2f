"""Arithmetic Kleinian groups: number fields, quaternion algebras, hyperbolic geometry and covolumes."""

from .errors import *  # noqa: F401,F403
from .lattices import (
    LatticeClass,
    classify,
    clozel_applies,
    cusp_count,
    cuspidal_vanishing_known,
    eisenstein_dimension,
)
from .numfield import (
    QQ,
    MonogenicField,
    NumberField,
    QuadraticField,
    class_number,
    ideal_counts,
    make_monogenic,
    make_quadratic,
    splitting_type,
)
from .quatalg import (
    QuaternionAlgebra,
    discriminant_ideal,
    matrix_embedding,
    ramification_set,
    realize_ramification_set,
)
from .zetavol import (
    VolumeResult,
    ZetaResult,
    arithmetic_covolume,
    bianchi_volume,
    dedekind_zeta2,
    euler_product_zeta2,
)

__version__ = "0.1.0"
