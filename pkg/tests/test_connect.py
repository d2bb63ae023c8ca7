import random

import pytest

from helpers import rand_form, rand_poly
from poisson_kit import connect as C
from poisson_kit import poisson as ps
from poisson_kit.forms import KForm, ce_differential, one_form, poisson_two_form
from poisson_kit.poly import I_UNIT


def test_flat_and_lie_potential_curvature():
    P = ps.sl2()
    assert C.curvature(P, C.flat(P)).is_zero()
    theta = one_form(P.ring, list(P.ring.gens()))
    pi = poisson_two_form(P)
    assert C.curvature(P, C.RankOneConnection(theta, "real")) == -pi
    assert C.curvature(P, C.RankOneConnection(theta, "imaginary")) == pi.scale(-I_UNIT)
    assert C.quantization_curvature_matches(P, theta)


def test_axioms_and_curvature_is_tensorial():
    rng = random.Random(21)
    P = ps.plane_structure("u1*u2")
    for mode in C.MODES:
        nabla = C.RankOneConnection(rand_form(P.ring, 1, rng, 2), mode)
        omega = C.curvature(P, nabla)
        for _ in range(5):
            a, b = rand_form(P.ring, 1, rng, 1), rand_form(P.ring, 1, rng, 1)
            f, s = rand_poly(P.ring, rng, 2), rand_poly(P.ring, rng, 2, gaussian=True)
            assert C.check_axioms(P, nabla, a, f, s)
            assert C.curvature_operator(P, nabla, a, b, s) == omega(a, b) * s


def test_tensor_and_difference():
    rng = random.Random(22)
    P = ps.sl2()
    t1, t2 = rand_form(P.ring, 1, rng, 2), rand_form(P.ring, 1, rng, 2)
    n1, n2 = C.RankOneConnection(t1, "imaginary"), C.RankOneConnection(t2, "imaginary")
    assert C.curvature(P, C.tensor_connection(n1, n2)) == C.curvature(P, n1) + C.curvature(P, n2)
    inv = C.RankOneConnection(-t1, "imaginary")
    assert C.curvature(P, C.tensor_connection(n1, inv)).is_zero()
    assert C.connection_difference_check(P, n1, n2)
    assert C.connection_difference_check(P, n1, n1)
    with pytest.raises(C.ModeMismatchError):
        C.tensor_connection(n1, C.RankOneConnection(t2, "real"))
    assert C.bianchi_defect(P, n1).is_zero()


def test_extension_dictionary():
    P = ps.sl2()
    e, h, f = P.ring.gens()
    assert not C.extension_jacobi_defect(P, poisson_two_form(P))
    assert not C.extension_jacobi_defect(P, KForm.zero(P.ring, 2))
    bad = KForm(P.ring, 2, {(0, 1): e * e})
    d = ce_differential(P, bad)
    defect = C.extension_jacobi_defect(P, bad)
    assert defect and defect.witness == (0, 1, 2)
    assert defect.value.a == d[(0, 1, 2)] and defect.value.alpha.is_zero()
    assert C.recovered_cocycle(P, bad) == bad


def test_extension_bracket_antisymmetric():
    rng = random.Random(23)
    P = ps.canonical_cotangent(2)
    ext = C.ExtensionData(P, rand_form(P.ring, 2, rng, 2))
    x = C.ExtElement(rand_poly(P.ring, rng, 2), rand_form(P.ring, 1, rng, 1))
    y = C.ExtElement(rand_poly(P.ring, rng, 2), rand_form(P.ring, 1, rng, 1))
    xy, yx = ext.bracket(x, y), ext.bracket(y, x)
    assert xy.a == -yx.a and xy.alpha == -yx.alpha


def test_bad_mode():
    with pytest.raises(ValueError):
        C.RankOneConnection(KForm.zero(ps.sl2().ring, 1), "complex")
