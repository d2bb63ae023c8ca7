"""Reduction of the massless relativistic particle at the polynomial level.

The phase space ring is ``Q[x0..x3, p0..p3]`` with ``{x_j, p_j} = 1`` and the
constraint ``J = p0^2 - p1^2 - p2^2 - p3^2``.  Observables of the reduced
system are classes mod ``(J)`` of elements ``f`` with ``{J, f}`` in ``(J)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Tuple

from .forms import KForm, ce_differential, kahler_d, poisson_two_form
from .poisson import PoissonStructure, _check_ring, bracket, hamiltonian_derivation
from .poly import Polynomial, Ring, divide_exact, divmod_poly

X_NAMES = ("x0", "x1", "x2", "x3")
P_NAMES = ("p0", "p1", "p2", "p3")


class NotInNormalizerError(ValueError):
    pass


class MasslessSystem:
    """Ring, canonical bracket, constraint ``J`` and the potential ``sum p_j dp_j``.

    The defining identities are checked on construction, which pins down the
    sign convention for everything downstream.
    """

    def __init__(self):
        self.ring = Ring(X_NAMES + P_NAMES)
        r = self.ring
        self.x = r.gens()[:4]
        self.p = r.gens()[4:]
        self.P = PoissonStructure(r, {(j, 4 + j): 1 for j in range(4)})
        p0, p1, p2, p3 = self.p
        self.J = p0 ** 2 - p1 ** 2 - p2 ** 2 - p3 ** 2
        self.J2 = self.J * self.J
        self.theta = KForm(r, 1, {(4 + j,): self.p[j] for j in range(4)})
        self._check()

    def _check(self):
        expected = (-2 * self.p[0], 2 * self.p[1], 2 * self.p[2], 2 * self.p[3]) + (self.ring.zero,) * 4
        got = hamiltonian_derivation(self.P, self.J).components
        if tuple(got) != expected:
            raise ArithmeticError(f"Hamiltonian derivation of J is {got}")
        if ce_differential(self.P, self.theta) != poisson_two_form(self.P):
            raise ArithmeticError("theta is not a potential for the canonical bracket")
        if self.induced_potential_value(self.J) != 2 * self.J:
            raise ArithmeticError("theta(dJ) != 2J")

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return bracket(self.P, f, g)

    def in_ideal(self, f: Polynomial) -> bool:
        _check_ring(self.ring, f)
        return divide_exact(f, self.J) is not None

    def in_ideal_squared(self, f: Polynomial) -> bool:
        _check_ring(self.ring, f)
        return divide_exact(f, self.J2) is not None

    def normal_form(self, f: Polynomial) -> Polynomial:
        """Remainder of ``f`` on division by ``J``; canonical for the class."""
        return divmod_poly(f, self.J)[1]

    def in_normalizer(self, f: Polynomial) -> bool:
        return self.in_ideal(self.bracket(self.J, f))

    def induced_potential_value(self, f: Polynomial) -> Polynomial:
        """``theta(df) = sum_j p_j df/dp_j``."""
        return self.theta(kahler_d(f))

    def descent_defect(self, f: Polynomial) -> Polynomial:
        """``{J, theta(df)} - theta(d{J, f}) + {J, f}``; zero for every ``f``."""
        Jf = self.bracket(self.J, f)
        return (self.bracket(self.J, self.induced_potential_value(f))
                - self.induced_potential_value(Jf) + Jf)

    def divergence(self, f: Polynomial) -> Polynomial:
        """``sum_{j=1}^{3} d^2 f / dx_j dp_j`` (spatial indices only)."""
        out = self.ring.zero
        for j in (1, 2, 3):
            out = out + f.diff(j).diff(4 + j)
        return out

    def is_affine_in_x(self, f: Polynomial) -> bool:
        return f.degree_in(range(4)) <= 1

    def is_admissible(self, f: Polynomial) -> "AdmissibilityReport":
        """Normalizer membership plus the second x-partials at the (J) and (J^2) levels."""
        _check_ring(self.ring, f)
        pairs = {}
        for j, k in combinations_with_replacement(range(4), 2):
            h = f.diff(j).diff(k)
            pairs[(j, k)] = (self.in_ideal(h), self.in_ideal_squared(h))
        return AdmissibilityReport(self.in_normalizer(f), pairs)

    def reduced_bracket(self, f: Polynomial, g: Polynomial) -> "ObservableClass":
        for h in (f, g):
            if not self.in_normalizer(h):
                raise NotInNormalizerError(f"{h} is not in the normalizer of (J)")
        return ObservableClass(self, self.bracket(f, g))

    def cls(self, f: Polynomial) -> "ObservableClass":
        return ObservableClass(self, f)

    # named observables

    def boost(self, j: int) -> Polynomial:
        """``beta_j = x0 p_j + x_j p0`` for ``j = 1, 2, 3``."""
        if j not in (1, 2, 3):
            raise ValueError("boost index is spatial")
        return self.x[0] * self.p[j] + self.x[j] * self.p[0]

    def angular_momentum(self, k: int, j: int) -> Polynomial:
        """``alpha_kj = x_k p_j - x_j p_k``."""
        return self.x[k] * self.p[j] - self.x[j] * self.p[k]

    def dilation(self) -> Polynomial:
        return sum((self.x[j] * self.p[j] for j in range(4)), self.ring.zero)

    def parse(self, text: str, gaussian: bool = False) -> Polynomial:
        return self.ring.parse(text, gaussian)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Truthy when ``f`` is in the normalizer and all second x-partials lie in (J)."""

    in_normalizer: bool
    pairs: Dict[Tuple[int, int], Tuple[bool, bool]]

    @property
    def admissible_j(self) -> bool:
        return self.in_normalizer and all(a for a, _ in self.pairs.values())

    @property
    def admissible_j2(self) -> bool:
        return self.in_normalizer and all(b for _, b in self.pairs.values())

    def __bool__(self):
        return self.admissible_j

    def to_json(self):
        return {"normalizer": self.in_normalizer, "J": self.admissible_j,
                "J2": self.admissible_j2}


@dataclass(frozen=True, eq=False)
class ObservableClass:
    """Class of a representative modulo ``(J)``, stored in normal form."""

    system: MasslessSystem
    representative: Polynomial
    normal: Polynomial = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "normal", self.system.normal_form(self.representative))

    def __eq__(self, other):
        if isinstance(other, ObservableClass):
            return self.normal == other.normal
        if isinstance(other, Polynomial):
            return self.normal == self.system.normal_form(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.normal)

    def is_zero(self) -> bool:
        return not self.normal

    def __repr__(self):
        return f"ObservableClass({self.normal} mod J)"


def reduce_demo(system: MasslessSystem = None) -> Dict[str, object]:
    """Run the reduction pipeline on the named observables and report."""
    from .quantize import ExpWave, half_form_apply, wave_apply

    sys_ = system or MasslessSystem()
    named = {f"beta{j}": sys_.boost(j) for j in (1, 2, 3)}
    named.update({f"alpha{k}{j}": sys_.angular_momentum(k, j) for k, j in ((1, 2), (1, 3), (2, 3))})
    named["D"] = sys_.dilation()
    named["x0"] = sys_.x[0]
    named["J*x0^2"] = sys_.J * sys_.x[0] ** 2
    amp = sys_.parse("p0^2 + p1*p2 + 1", gaussian=True)
    phi = ExpWave(sys_, amp)
    rows = []
    for name, f in named.items():
        adm = sys_.is_admissible(f)
        row = {
            "name": name,
            "observable": str(f),
            "normalizer": adm.in_normalizer,
            "admissible": adm.to_json(),
            "divergence": str(sys_.divergence(f)),
            "descent_defect": str(sys_.descent_defect(f)),
        }
        if adm.admissible_j2 and sys_.is_affine_in_x(f):
            w = wave_apply(sys_, f, phi)
            h = half_form_apply(sys_, f, phi)
            row["wave"] = str(w.amplitude)
            row["two_path_agree"] = w == h
        rows.append(row)
    b1, b2 = sys_.boost(1), sys_.boost(2)
    br = sys_.reduced_bracket(b1, b2)
    return {
        "J": str(sys_.J),
        "hamiltonian_J": [str(c) for c in hamiltonian_derivation(sys_.P, sys_.J).components],
        "theta_dJ": str(sys_.induced_potential_value(sys_.J)),
        "amplitude": str(amp),
        "observables": rows,
        "bracket_beta1_beta2": str(br.normal),
        "bracket_beta1_beta2_equals_minus_alpha12": br == -sys_.angular_momentum(1, 2),
    }
