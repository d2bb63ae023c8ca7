"""Prequantization operators over Gaussian rationals, and exponential waves.

For a potential ``theta`` (``d theta = pi``) the imaginary-mode connection has
curvature ``-i pi`` and each polynomial ``a`` gives an operator on sections::

    a^ s = -i nabla_{da} s + a s = -i{a, s} - theta(da) s + a s

The real-mode analogue ``{a, s} - theta(da) s + a s`` is a Lie homomorphism
without the factor ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .connect import RankOneConnection
from .forms import KForm, ce_differential, kahler_d, poisson_two_form
from .poisson import PoissonStructure, _check_ring, bracket, require_poisson
from .poly import I_UNIT, Polynomial
from .reduce import MasslessSystem

HALF = Fraction(1, 2)


class NotAPotentialError(ValueError):
    """``d theta != pi``: the structure is not quantized by this 1-form."""


_VERIFIED = set()


def require_potential(P: PoissonStructure, theta: KForm) -> None:
    key = (P, theta)
    if key in _VERIFIED:
        return
    require_poisson(P)
    _check_ring(P.ring, *theta.coeffs.values())
    if ce_differential(P, theta, check=False) != poisson_two_form(P):
        raise NotAPotentialError("d(theta) differs from the Poisson 2-form")
    _VERIFIED.add(key)


def prequant_apply(P: PoissonStructure, theta: KForm, a: Polynomial, s: Polynomial) -> Polynomial:
    require_potential(P, theta)
    nabla = RankOneConnection(theta, "imaginary")
    return nabla.covariant(P, kahler_d(a), s) * (-I_UNIT) + a * s


def dirac_defect(P: PoissonStructure, theta: KForm, a: Polynomial, b: Polynomial,
                 s: Polynomial) -> Polynomial:
    """``i [a^, b^] s - ({a,b})^ s``."""
    op = lambda f, t: prequant_apply(P, theta, f, t)
    comm = op(a, op(b, s)) - op(b, op(a, s))
    return comm * I_UNIT - op(bracket(P, a, b), s)


def real_rep_apply(P: PoissonStructure, theta: KForm, a: Polynomial, s: Polynomial) -> Polynomial:
    require_potential(P, theta)
    nabla = RankOneConnection(theta, "real")
    return nabla.covariant(P, kahler_d(a), s) + a * s


def real_rep_defect(P: PoissonStructure, theta: KForm, a: Polynomial, b: Polynomial,
                    s: Polynomial) -> Polynomial:
    """``[a^, b^] s - ({a,b})^ s`` for the real representation."""
    op = lambda f, t: real_rep_apply(P, theta, f, t)
    return op(a, op(b, s)) - op(b, op(a, s)) - op(bracket(P, a, b), s)


# -- exponential waves on the massless phase space -----------------------------------


class PhaseError(ValueError):
    pass


@dataclass(frozen=True)
class ExpWave:
    """``g(x, p) * exp(-i <x, p>)`` with ``<x, p> = sum_{j=0}^{3} x_j p_j``."""

    system: MasslessSystem
    amplitude: Polynomial

    def __post_init__(self):
        _check_ring(self.system.ring, self.amplitude)

    def _same(self, other: "ExpWave"):
        if not isinstance(other, ExpWave):
            raise PhaseError("only waves with the same single phase combine")

    def __add__(self, other):
        self._same(other)
        return ExpWave(self.system, self.amplitude + other.amplitude)

    def __sub__(self, other):
        self._same(other)
        return ExpWave(self.system, self.amplitude - other.amplitude)

    def __eq__(self, other):
        return isinstance(other, ExpWave) and self.amplitude == other.amplitude

    def __hash__(self):
        return hash(self.amplitude)

    def scale(self, f) -> "ExpWave":
        return ExpWave(self.system, self.amplitude * f)

    def diff(self, i: int) -> "ExpWave":
        """Derivative in generator ``i`` (x's are 0..3, p's 4..7)."""
        g = self.amplitude
        s = self.system
        partner = s.p[i] if i < 4 else s.x[i - 4]
        return ExpWave(s, g.diff(i) - partner * g * I_UNIT)

    def d_x(self, j: int) -> "ExpWave":
        return self.diff(j)

    def d_p(self, j: int) -> "ExpWave":
        return self.diff(4 + j)

    def polarization_residual(self, j: int) -> Polynomial:
        """Amplitude of ``d phi / dx_j + i p_j phi``; zero when ``g`` is p-only."""
        return (self.d_x(j) + self.scale(self.system.p[j] * I_UNIT)).amplitude


def wave_bracket(f: Polynomial, phi: ExpWave) -> ExpWave:
    """``{f, phi}`` through the wave derivative rules."""
    P = phi.system.P
    out = ExpWave(phi.system, phi.system.ring.zero)
    for (i, j), pij in P.entries.items():
        fi, fj = f.diff(i), f.diff(j)
        if fi:
            out = out + phi.diff(j).scale(pij * fi)
        if fj:
            out = out - phi.diff(i).scale(pij * fj)
    return out


class InadmissibleObservableError(ValueError):
    pass


def half_form_apply(system: MasslessSystem, f: Polynomial, phi: ExpWave) -> ExpWave:
    """``-i{f, phi} - theta(df) phi + f phi - (i/2) div(f) phi``.

    ``f`` must be admissible at the (J^2) level, which the divergence
    correction relies on.
    """
    report = system.is_admissible(f)
    if not report.admissible_j2:
        raise InadmissibleObservableError(f"{f} is not admissible: {report.to_json()}")
    return (wave_bracket(f, phi).scale(-I_UNIT)
            - phi.scale(system.induced_potential_value(f))
            + phi.scale(f)
            - phi.scale(system.divergence(f) * (I_UNIT * HALF)))


def split_affine(system: MasslessSystem, f: Polynomial):
    """``f = u(p) + sum_j x_j v_j(p)``; returns ``(u, [v_0..v_3])``."""
    if not system.is_affine_in_x(f):
        raise ValueError(f"{f} is not affine in the x variables")
    vs = [f.diff(j) for j in range(4)]
    u = Polynomial(f.ring, {m: c for m, c in f.terms.items() if not any(m[:4])})
    return u, vs


def wave_apply(system: MasslessSystem, f: Polynomial, phi: ExpWave) -> ExpWave:
    """Closed form on amplitudes ``alpha(p)`` for ``f`` affine in x::

        alpha^ = u alpha - i sum_{j=0}^{3} v_j dalpha/dp_j - (i/2) sum_{j=1}^{3} alpha dv_j/dp_j
    """
    alpha = phi.amplitude
    if alpha.degree_in(range(4)) > 0:
        raise ValueError("wave amplitude must depend on p only")
    u, vs = split_affine(system, f)
    out = u * alpha
    for j in range(4):
        if vs[j]:
            out = out - vs[j] * alpha.diff(4 + j) * I_UNIT
    div = system.ring.zero
    for j in (1, 2, 3):
        div = div + vs[j].diff(4 + j)
    out = out - alpha * div * (I_UNIT * HALF)
    return ExpWave(system, out)
