"""Connections on the free rank-one module over a Poisson algebra.

A connection on ``A`` (or ``A (x) C``) along the differentials is fixed by a
1-form ``theta``::

    nabla_alpha(s) = alpha#(s) - m * theta(alpha) * s

with mode factor ``m = 1`` (real) or ``m = i`` (imaginary).  Curvature is
obtained by composing these operators literally on the section ``1`` and is
then compared with the closed formula ``-m * d(theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Tuple

from .forms import (KForm, basis_one_form, bracket_one_forms, ce_differential,
                    poisson_two_form, sharp)
from .poisson import PoissonStructure, _check_ring, require_poisson
from .poly import I_UNIT, Polynomial

MODES = ("real", "imaginary")


class ModeMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class RankOneConnection:
    theta: KForm
    mode: str = "real"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.theta.k != 1:
            raise ValueError("a connection is given by a 1-form")

    @property
    def factor(self):
        return 1 if self.mode == "real" else I_UNIT

    def covariant(self, P: PoissonStructure, alpha: KForm, s: Polynomial) -> Polynomial:
        _check_ring(P.ring, s, *self.theta.coeffs.values())
        return sharp(P, alpha)(s) - self.theta(alpha) * s * self.factor

    def to_json(self):
        from .forms import form_to_text
        return {"theta": form_to_text(self.theta), "mode": self.mode}


def flat(P: PoissonStructure, mode: str = "real") -> RankOneConnection:
    return RankOneConnection(KForm.zero(P.ring, 1), mode)


def curvature_operator(P: PoissonStructure, nabla: RankOneConnection, alpha: KForm,
                       beta: KForm, s: Polynomial) -> Polynomial:
    """``(nabla_a nabla_b - nabla_b nabla_a - nabla_[a,b]) s`` by composition."""
    cov = nabla.covariant
    ab = bracket_one_forms(P, alpha, beta, check=False)
    return (cov(P, alpha, cov(P, beta, s)) - cov(P, beta, cov(P, alpha, s))
            - cov(P, ab, s))


def curvature(P: PoissonStructure, nabla: RankOneConnection) -> KForm:
    """Curvature 2-form read off from the operator commutators on ``1``.

    The result is checked against ``-m d(theta)``; a disagreement raises
    ``ArithmeticError``.
    """
    require_poisson(P)
    ring = P.ring
    one = ring.one
    basis = [basis_one_form(ring, i) for i in range(ring.n)]
    coeffs = {}
    for i, j in combinations(range(ring.n), 2):
        v = curvature_operator(P, nabla, basis[i], basis[j], one)
        if v:
            coeffs[(i, j)] = v
    omega = KForm(ring, 2, coeffs)
    closed = ce_differential(P, nabla.theta, check=False).scale(-nabla.factor)
    if omega != closed:
        raise ArithmeticError("operator curvature disagrees with -m d(theta)")
    return omega


def bianchi_defect(P: PoissonStructure, nabla: RankOneConnection) -> KForm:
    """``d`` of the curvature; End of a rank-one module is central, so this is all."""
    return ce_differential(P, curvature(P, nabla), check=False)


def tensor_connection(n1: RankOneConnection, n2: RankOneConnection) -> RankOneConnection:
    if n1.mode != n2.mode:
        raise ModeMismatchError(f"cannot tensor {n1.mode} with {n2.mode}")
    return RankOneConnection(n1.theta + n2.theta, n1.mode)


def connection_difference_check(P: PoissonStructure, n1: RankOneConnection,
                                n2: RankOneConnection) -> bool:
    """``curv(n1) - curv(n2) == -m d(theta1 - theta2)``."""
    if n1.mode != n2.mode:
        raise ModeMismatchError(f"cannot compare {n1.mode} with {n2.mode}")
    lhs = curvature(P, n1) - curvature(P, n2)
    rhs = ce_differential(P, n1.theta - n2.theta, check=False).scale(-n1.factor)
    return lhs == rhs


def check_axioms(P: PoissonStructure, nabla: RankOneConnection, alpha: KForm,
                 f: Polynomial, s: Polynomial) -> bool:
    """A-linearity in the 1-form and Leibniz in the section, on one sample."""
    cov = nabla.covariant
    linear = cov(P, alpha.scale(f), s) == f * cov(P, alpha, s)
    leibniz = cov(P, alpha, f * s) == sharp(P, alpha)(f) * s + f * cov(P, alpha, s)
    return linear and leibniz


# -- extensions of the differentials by A --------------------------------------------


@dataclass(frozen=True)
class ExtElement:
    """``(a, alpha)`` in ``A (+) D``."""

    a: Polynomial
    alpha: KForm


@dataclass(frozen=True)
class ExtensionData:
    P: PoissonStructure
    pi2: KForm

    def __post_init__(self):
        if self.pi2.k != 2:
            raise ValueError("extension cocycle must be a 2-form")
        _check_ring(self.P.ring, *self.pi2.coeffs.values())

    def bracket(self, x: ExtElement, y: ExtElement) -> ExtElement:
        return extension_bracket(self, x, y)


def extension_bracket(ext: ExtensionData, x: ExtElement, y: ExtElement) -> ExtElement:
    """``[(a,alpha),(b,beta)] = (pi2(alpha,beta) + alpha#(b) - beta#(a), [alpha,beta])``."""
    P = ext.P
    a = ext.pi2(x.alpha, y.alpha) + sharp(P, x.alpha)(y.a) - sharp(P, y.alpha)(x.a)
    return ExtElement(a, bracket_one_forms(P, x.alpha, y.alpha, check=False))


@dataclass(frozen=True)
class ExtensionDefect:
    """Jacobi sums of the extension bracket on basis triples, truthy iff nonzero."""

    witness: Optional[Tuple[int, int, int]]
    value: Optional[ExtElement]

    def __bool__(self):
        return self.witness is not None

    def is_zero(self) -> bool:
        return self.witness is None


def extension_jacobi_defect(P: PoissonStructure, pi2: KForm) -> ExtensionDefect:
    """First basis triple ``(dx_i, dx_j, dx_k)`` where Jacobi fails, if any.

    The Jacobiator is A-trilinear here and ``(1, 0)`` is central, so triples
    of basis differentials decide the identity.
    """
    require_poisson(P)
    ext = ExtensionData(P, pi2)
    ring = P.ring
    basis = [ExtElement(ring.zero, basis_one_form(ring, i)) for i in range(ring.n)]
    br = ext.bracket
    for i, j, k in combinations(range(ring.n), 3):
        x, y, z = basis[i], basis[j], basis[k]
        terms = [br(br(x, y), z), br(br(y, z), x), br(br(z, x), y)]
        a = terms[0].a + terms[1].a + terms[2].a
        alpha = terms[0].alpha + terms[1].alpha + terms[2].alpha
        if a or alpha:
            return ExtensionDefect((i, j, k), ExtElement(a, alpha))
    return ExtensionDefect(None, None)


def recovered_cocycle(P: PoissonStructure, pi2: KForm) -> KForm:
    """Read the cocycle back from the bracket of the sections ``(0, dx_i)``."""
    ext = ExtensionData(P, pi2)
    ring = P.ring
    basis = [ExtElement(ring.zero, basis_one_form(ring, i)) for i in range(ring.n)]
    return KForm(ring, 2, {(i, j): ext.bracket(basis[i], basis[j]).a
                           for i, j in combinations(range(ring.n), 2)})


def quantization_curvature_matches(P: PoissonStructure, theta: KForm) -> bool:
    """Imaginary-mode curvature equals ``-i pi`` exactly when ``theta`` is a potential."""
    return curvature(P, RankOneConnection(theta, "imaginary")) == \
        poisson_two_form(P).scale(-I_UNIT)
