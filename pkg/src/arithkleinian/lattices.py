"""Admissibility of (K, D) for arithmetic lattices, cusps and cohomology predicates."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotArithmeticSetupError, NotSquarefreeError, UnsupportedFieldError
from .numfield import NumberField, QuadraticField, class_number, is_squarefree
from .quatalg import QuaternionAlgebra, RamificationSet, ramification_set

# Q(sqrt -d) whose Bianchi orbifold has vanishing cuspidal cohomology, stored as d > 0
CUSPIDAL_VANISHING = frozenset({1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 39, 47, 71})


@dataclass(frozen=True)
class LatticeClass:
    kind: str
    cocompact: bool
    field: NumberField
    algebra: QuaternionAlgebra
    ramification: RamificationSet

    def as_dict(self):
        return {
            "kind": self.kind,
            "cocompact": self.cocompact,
            "field": self.field.spec(),
            "ramification": self.ramification.as_dict(),
        }


def classify(K: NumberField, D: QuaternionAlgebra) -> LatticeClass:
    """Fuchsian or Kleinian, and cocompact iff S(D) is nonempty."""
    if D.field is not K and D.field != K:
        raise NotArithmeticSetupError("the algebra is defined over a different field")
    r1, r2 = K.signature
    S = ramification_set(D)
    real_ramified = len(S.infinite)
    if r2 == 1 and real_ramified == r1:
        kind = "kleinian"
    elif r2 == 0 and real_ramified == r1 - 1:
        kind = "fuchsian"
    elif r2 == 1:
        raise NotArithmeticSetupError(
            f"one complex place but only {real_ramified} of {r1} real places ramified"
        )
    elif r2 == 0:
        raise NotArithmeticSetupError(
            f"totally real field needs exactly one split real place, found {r1 - real_ramified}"
        )
    else:
        raise NotArithmeticSetupError(f"the field has {r2} complex places; at most one is allowed")
    return LatticeClass(kind, bool(S), K, D, S)


def _normalize_d(d) -> int:
    """Accept d < 0 or the positive value of Q(sqrt -d); return d < 0."""
    if isinstance(d, QuadraticField):
        if not d.is_imaginary:
            raise UnsupportedFieldError("an imaginary quadratic field is required")
        return d.d
    d = int(d)
    d = -abs(d)
    if d == 0 or not is_squarefree(d):
        raise NotSquarefreeError(f"d must be a nonzero squarefree integer, got {d}")
    return d


def cusp_count(d) -> int:
    return class_number(QuadraticField(_normalize_d(d)))


def eisenstein_dimension(d) -> int:
    d = _normalize_d(d)
    if d in (-1, -3):
        return 0
    return cusp_count(d)


def cuspidal_vanishing_known(d) -> bool:
    return -_normalize_d(d) in CUSPIDAL_VANISHING


def clozel_applies(K: QuadraticField, D: QuaternionAlgebra) -> bool:
    """True iff every finite ramified place of D has residue degree one."""
    if not (isinstance(K, QuadraticField) and K.is_imaginary):
        raise UnsupportedFieldError("the criterion is implemented for imaginary quadratic fields")
    return all(v.prime.residue_degree == 1 for v in ramification_set(D).finite)
