import random

import pytest

from arithkleinian.errors import NotArithmeticSetupError, UnsupportedFieldError
from arithkleinian.lattices import (
    CUSPIDAL_VANISHING,
    classify,
    clozel_applies,
    cusp_count,
    cuspidal_vanishing_known,
    eisenstein_dimension,
)
from arithkleinian.numfield import QQ, QuadraticField, is_squarefree, make_monogenic
from arithkleinian.quatalg import QuaternionAlgebra, ramification_set


def test_minus1_minus3_over_sqrt_minus2_is_cocompact_kleinian():
    K = QuadraticField(-2)
    L = classify(K, QuaternionAlgebra(-1, -3, field=K))
    assert (L.kind, L.cocompact) == ("kleinian", True)


def test_bianchi_lattice_is_not_cocompact():
    K = QuadraticField(-3)
    L = classify(K, QuaternionAlgebra(1, 1, field=K))
    assert (L.kind, L.cocompact) == ("kleinian", False)


def test_modular_group_is_fuchsian_not_cocompact():
    L = classify(QQ, QuaternionAlgebra(1, 1))
    assert (L.kind, L.cocompact) == ("fuchsian", False)
    assert classify(QQ, QuaternionAlgebra(2, 3)).cocompact


def test_weeks_setup_is_cocompact_kleinian():
    K = make_monogenic([-1, -1, 0, 1])
    w = K.gen
    L = classify(K, QuaternionAlgebra(-w, w - 2, field=K))
    assert (L.kind, L.cocompact) == ("kleinian", True)


def test_non_arithmetic_setups_are_reported():
    with pytest.raises(NotArithmeticSetupError):
        classify(QQ, QuaternionAlgebra(-1, -1))  # definite over Q
    K = make_monogenic([-1, -1, 0, 1])
    with pytest.raises(NotArithmeticSetupError):
        classify(K, QuaternionAlgebra(1, 1, field=K))  # real place split
    with pytest.raises(NotArithmeticSetupError):
        classify(QuadraticField(5), QuaternionAlgebra(1, 1, field=QuadraticField(5)))


def test_swap_stability_and_noncocompact_characterization():
    rng = random.Random(0)
    for d in (-1, -2, -3, -5, -11):
        K = QuadraticField(d)
        for _ in range(20):
            a = K([rng.randint(-12, 12) or 1, rng.randint(-2, 2)])
            b = K([rng.randint(-12, 12) or 1, rng.randint(-2, 2)])
            L1 = classify(K, QuaternionAlgebra(a, b, field=K))
            L2 = classify(K, QuaternionAlgebra(b, a, field=K))
            assert (L1.kind, L1.cocompact) == (L2.kind, L2.cocompact)
            assert L1.ramification.labels() == L2.ramification.labels()
            if L1.kind == "kleinian" and not L1.cocompact:
                assert K.is_imaginary and not ramification_set(QuaternionAlgebra(a, b, field=K))


@pytest.mark.parametrize("d, h", [(-1, 1), (-5, 2), (-10, 2)])
def test_cusp_counts(d, h):
    assert cusp_count(d) == h
    assert cusp_count(-d) == h  # positive input names Q(sqrt -d)


def test_eisenstein_dimension():
    assert eisenstein_dimension(-1) == 0 and eisenstein_dimension(-3) == 0
    assert eisenstein_dimension(-5) == 2
    for d in range(-3, -101, -1):
        if is_squarefree(d) and d not in (-1, -3):
            assert eisenstein_dimension(d) == cusp_count(d)


def test_cuspidal_vanishing_list():
    assert len(CUSPIDAL_VANISHING) == 14
    assert not cuspidal_vanishing_known(-10)
    assert cuspidal_vanishing_known(-71) and cuspidal_vanishing_known(-2)
    hits = [d for d in range(1, 500) if is_squarefree(d) and cuspidal_vanishing_known(d)]
    assert len(hits) == 14


def test_clozel_criterion():
    K = QuadraticField(-2)
    assert clozel_applies(K, QuaternionAlgebra(-1, -3, field=K))
    K = QuadraticField(-1)
    assert clozel_applies(K, QuaternionAlgebra(1, 5, field=K))  # split, vacuous
    D = QuaternionAlgebra(3, K([-3, 1]), field=K)
    assert any(v.prime.residue_degree == 2 for v in ramification_set(D).finite)
    assert not clozel_applies(K, D)
    with pytest.raises(UnsupportedFieldError):
        clozel_applies(QQ, QuaternionAlgebra(2, 3))
