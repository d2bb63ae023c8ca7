import random

import pytest

from helpers import rand_poly
from poisson_kit import homalg
from poisson_kit import poisson as ps
from poisson_kit import quantize as Q
from poisson_kit.forms import one_form, poisson_two_form
from poisson_kit.poly import I_UNIT
from poisson_kit.reduce import MasslessSystem


def test_prequant_examples():
    P = ps.sl2()
    r = P.ring
    e, h, f = r.gens()
    theta = one_form(r, [e, h, f])
    s = e * h + f * I_UNIT
    assert Q.prequant_apply(P, theta, r.one, s) == s
    for x in r.gens():
        assert Q.prequant_apply(P, theta, x, s) == P.bracket(x, s) * (-I_UNIT)
        assert Q.real_rep_apply(P, theta, x, s) == P.bracket(x, s)
    cas = e * f + f * e + h * h / 2
    from poisson_kit.forms import kahler_d
    assert Q.prequant_apply(P, theta, cas, r.one) == cas - theta(kahler_d(cas))


def test_dirac_and_real_homomorphism():
    rng = random.Random(31)
    for P in (ps.sl2(), ps.plane_structure("1"), ps.plane_structure("u1^2")):
        theta = homalg.solve_coboundary(P, poisson_two_form(P), 1)
        for _ in range(10):
            a, b = rand_poly(P.ring, rng, 2), rand_poly(P.ring, rng, 2)
            s = rand_poly(P.ring, rng, 2, gaussian=True)
            assert Q.dirac_defect(P, theta, a, b, s).is_zero()
            assert Q.real_rep_defect(P, theta, a, b, s.real_part()).is_zero()


def test_requires_potential():
    P = ps.sl2()
    with pytest.raises(Q.NotAPotentialError):
        Q.prequant_apply(P, one_form(P.ring, [0, 0, 0]), P.ring.one, P.ring.one)


def test_wave_rules_and_polarization():
    S = MasslessSystem()
    g = S.parse("p0*p1 + i*p2", gaussian=True)
    phi = Q.ExpWave(S, g)
    for j in range(4):
        assert phi.polarization_residual(j).is_zero()
        assert phi.d_x(j).amplitude == -S.p[j] * g * I_UNIT
        assert phi.d_p(j).amplitude == g.diff(4 + j) - S.x[j] * g * I_UNIT
    mixed = Q.ExpWave(S, S.x[1] * S.p[0])
    assert mixed.polarization_residual(1) == S.p[0]


def test_wave_examples():
    S = MasslessSystem()
    alpha = S.parse("p0^2 - 2*p1*p3 + i*p2 + 1", gaussian=True)
    phi = Q.ExpWave(S, alpha)
    assert Q.wave_apply(S, S.ring.one, phi) == phi
    b1 = S.boost(1)
    expect = (S.p[1] * alpha.diff(4) + S.p[0] * alpha.diff(5)) * (-I_UNIT)
    assert Q.wave_apply(S, b1, phi).amplitude == expect
    u = S.p[2] * S.p[3]
    assert Q.wave_apply(S, u, phi).amplitude == u * alpha
    for f in (b1, S.angular_momentum(1, 2), S.dilation(), u):
        assert Q.half_form_apply(S, f, phi) == Q.wave_apply(S, f, phi)
    assert Q.half_form_apply(S, S.ring.one, phi) == phi


def test_wave_preconditions():
    S = MasslessSystem()
    phi = Q.ExpWave(S, S.parse("p0"))
    with pytest.raises(ValueError):
        Q.wave_apply(S, S.x[0] ** 2 * S.J, phi)
    with pytest.raises(ValueError):
        Q.wave_apply(S, S.boost(1), Q.ExpWave(S, S.x[0]))
    with pytest.raises(Q.InadmissibleObservableError):
        Q.half_form_apply(S, S.x[0], phi)
    with pytest.raises(Q.InadmissibleObservableError):
        Q.half_form_apply(S, S.J * S.x[0] ** 2, phi)
