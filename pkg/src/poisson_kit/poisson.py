"""Poisson structures on polynomial rings given by a bivector.

The bracket of two polynomials is the Leibniz extension of the values on
generators::

    {f, g} = sum_{i<j} P_ij * (df/dx_i * dg/dx_j - df/dx_j * dg/dx_i)

A :class:`PoissonStructure` may hold a bivector that fails the Jacobi
identity; :func:`is_poisson` decides, and operations that need Jacobi say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .poly import Polynomial, Ring, RingMismatchError, parse_poly


class NotPoissonError(ValueError):
    """The bivector does not satisfy the Jacobi identity."""


def _check_ring(ring: Ring, *polys: Polynomial):
    for p in polys:
        if p.ring is not ring and p.ring != ring:
            raise RingMismatchError(f"ring {p.ring.names} != {ring.names}")


class PoissonStructure:
    """Generators plus antisymmetric bivector entries ``P_ij = {x_i, x_j}``."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: Union[Ring, Sequence[str]], entries: Mapping[Tuple[int, int], object]):
        if not isinstance(ring, Ring):
            ring = Ring(tuple(ring))
        self.ring = ring
        store: Dict[Tuple[int, int], Polynomial] = {}
        for (i, j), value in dict(entries).items():
            if not (0 <= i < ring.n and 0 <= j < ring.n):
                raise IndexError(f"bivector index ({i},{j}) out of range")
            p = value if isinstance(value, Polynomial) else (
                parse_poly(value, ring) if isinstance(value, str) else ring.const(value))
            _check_ring(ring, p)
            if i == j:
                if p:
                    raise ValueError("diagonal bivector entries must vanish")
                continue
            if i > j:
                i, j, p = j, i, -p
            total = store.get((i, j), ring.zero) + p
            if total:
                store[(i, j)] = total
            else:
                store.pop((i, j), None)
        self.entries = store

    def __repr__(self):
        body = ", ".join(f"{{{self.ring.names[i]},{self.ring.names[j]}}}={p}"
                         for (i, j), p in sorted(self.entries.items()))
        return f"PoissonStructure({self.ring.names}, {body})"

    def __eq__(self, other):
        if not isinstance(other, PoissonStructure):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, frozenset(self.entries.items())))

    @property
    def n(self) -> int:
        return self.ring.n

    def entry(self, i: int, j: int) -> Polynomial:
        if i == j:
            return self.ring.zero
        if i < j:
            return self.entries.get((i, j), self.ring.zero)
        return -self.entries.get((j, i), self.ring.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def bivector_degree(self) -> Optional[int]:
        """Common total degree of all entries, ``None`` for the zero bivector.

        Raises ``ValueError`` when the entries are not homogeneous of one degree.
        """
        degrees = set()
        for p in self.entries.values():
            if not p.is_homogeneous():
                raise ValueError("bivector entry is not homogeneous")
            degrees.add(p.degree())
        if len(degrees) > 1:
            raise ValueError(f"bivector entries have mixed degrees {sorted(degrees)}")
        return degrees.pop() if degrees else None

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return bracket(self, f, g)


@dataclass(frozen=True)
class Derivation:
    """A derivation of the polynomial ring, stored by its values on generators."""

    ring: Ring
    components: Tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.components) != self.ring.n:
            raise ValueError("one component per generator is required")
        _check_ring(self.ring, *self.components)

    def __call__(self, f: Polynomial) -> Polynomial:
        _check_ring(self.ring, f)
        out = self.ring.zero
        for i, c in enumerate(self.components):
            if c:
                d = f.diff(i)
                if d:
                    out = out + c * d
        return out

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ring, tuple(a + b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Derivation":
        return Derivation(self.ring, tuple(-c for c in self.components))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return self + (-other)

    def scale(self, a: Polynomial) -> "Derivation":
        return Derivation(self.ring, tuple(a * c for c in self.components))

    def commutator(self, other: "Derivation") -> "Derivation":
        """``[X, Y] = X Y - Y X``, again a derivation."""
        return Derivation(self.ring, tuple(self(b) - other(a)
                                           for a, b in zip(self.components, other.components)))

    def is_zero(self) -> bool:
        return not any(self.components)

    @classmethod
    def zero(cls, ring: Ring) -> "Derivation":
        return cls(ring, (ring.zero,) * ring.n)


def bracket(P: PoissonStructure, f: Polynomial, g: Polynomial) -> Polynomial:
    """Evaluate ``{f, g}`` from the bivector by the Leibniz rule."""
    _check_ring(P.ring, f, g)
    if not P.entries or f.is_constant() or g.is_constant():
        return P.ring.zero
    n = P.ring.n
    df = [f.diff(i) for i in range(n)]
    dg = [g.diff(i) for i in range(n)]
    out = P.ring.zero
    for (i, j), p in P.entries.items():
        t = df[i] * dg[j] - df[j] * dg[i]
        if t:
            out = out + p * t
    return out


def jacobiator(P: PoissonStructure, f: Polynomial, g: Polynomial, h: Polynomial) -> Polynomial:
    """``{{f,g},h} + {{g,h},f} + {{h,f},g}``."""
    return (bracket(P, bracket(P, f, g), h) + bracket(P, bracket(P, g, h), f)
            + bracket(P, bracket(P, h, f), g))


@dataclass(frozen=True)
class JacobiReport:
    """Outcome of :func:`is_poisson`.  Truthy iff the Jacobi identity holds."""

    ok: bool
    witness: Optional[Tuple[int, int, int]] = None
    value: Optional[Polynomial] = None

    def __bool__(self):
        return self.ok


def is_poisson(P: PoissonStructure) -> JacobiReport:
    """Check Jacobi on all generator triples ``i<j<k``.

    The jacobiator of a bracket built from a bivector is a derivation in each
    slot, so its values on generators determine it.
    """
    gens = P.ring.gens()
    for i, j, k in combinations(range(P.n), 3):
        v = jacobiator(P, gens[i], gens[j], gens[k])
        if v:
            return JacobiReport(False, (i, j, k), v)
    return JacobiReport(True)


def require_poisson(P: PoissonStructure) -> None:
    report = is_poisson(P)
    if not report:
        i, j, k = report.witness
        names = P.ring.names
        raise NotPoissonError(
            f"Jacobi fails on ({names[i]}, {names[j]}, {names[k]}): {report.value}")


def hamiltonian_derivation(P: PoissonStructure, a: Polynomial) -> Derivation:
    """The derivation ``{a, -}``; component ``i`` is ``{a, x_i}``."""
    return Derivation(P.ring, tuple(bracket(P, a, x) for x in P.ring.gens()))


# -- constructors -------------------------------------------------------------------


def lie_poisson(structure_constants, names: Optional[Sequence[str]] = None) -> PoissonStructure:
    """Linear Poisson structure on the symmetric algebra of a Lie algebra.

    ``structure_constants[i][j][k]`` is ``c_ij^k`` in ``[e_i, e_j] = sum_k c_ij^k e_k``,
    and the bivector is ``P_ij = sum_k c_ij^k x_k``.  Jacobi for the Lie
    algebra is not required here; :func:`is_poisson` reports it.
    """
    c = structure_constants
    n = len(c)
    if any(len(row) != n or any(len(v) != n for v in row) for row in c):
        raise ValueError("structure constants must have shape n x n x n")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if Fraction(c[i][j][k]) != -Fraction(c[j][i][k]):
                    raise ValueError(f"structure constants not antisymmetric at ({i},{j},{k})")
    if names is None:
        names = tuple(f"x{i + 1}" for i in range(n))
    ring = Ring(tuple(names))
    if ring.n != n:
        raise ValueError("name count does not match the dimension")
    gens = ring.gens()
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            p = ring.zero
            for k in range(n):
                if c[i][j][k]:
                    p = p + gens[k] * Fraction(c[i][j][k])
            if p:
                entries[(i, j)] = p
    return PoissonStructure(ring, entries)


def constants_from_brackets(n: int, brackets: Mapping[Tuple[int, int], Mapping[int, object]]):
    """Dense ``c_ij^k`` array from a sparse ``{(i, j): {k: c}}`` table (i<j given)."""
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), row in brackets.items():
        for k, v in row.items():
            c[i][j][k] += Fraction(v)
            c[j][i][k] -= Fraction(v)
    return c


def sl2_constants():
    # basis (e, h, f): [e,h] = -2e, [e,f] = h, [h,f] = -2f
    return constants_from_brackets(3, {(0, 1): {0: -2}, (0, 2): {1: 1}, (1, 2): {2: -2}})


def so3_constants():
    # [x1,x2] = x3, [x2,x3] = x1, [x3,x1] = x2
    return constants_from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {1: -1}})


def aff1_constants():
    return constants_from_brackets(2, {(0, 1): {0: 1}})


def abelian_constants(n: int):
    return constants_from_brackets(n, {})


def sl2() -> PoissonStructure:
    return lie_poisson(sl2_constants(), names=("e", "h", "f"))


def so3() -> PoissonStructure:
    return lie_poisson(so3_constants())


def aff1() -> PoissonStructure:
    return lie_poisson(aff1_constants())


def magnetic_cotangent(n: int, chi: Mapping[Tuple[int, int], object]) -> PoissonStructure:
    """Cotangent structure twisted by a 2-form in the positions.

    Generators ``q1..qn, p1..pn`` with ``{q_i, p_j} = delta_ij`` and
    ``{p_i, p_j} = chi_ij(q)``.  Keys of ``chi`` are 0-based position indices.
    """
    names = tuple(f"q{i + 1}" for i in range(n)) + tuple(f"p{i + 1}" for i in range(n))
    ring = Ring(names)
    entries: Dict[Tuple[int, int], object] = {(i, n + i): 1 for i in range(n)}
    for (i, j), value in dict(chi).items():
        p = value if isinstance(value, Polynomial) else (
            parse_poly(value, ring) if isinstance(value, str) else ring.const(value))
        if p.ring != ring:
            # accept polynomials written over the position ring q1..qn
            if p.ring.names != names[:n]:
                raise RingMismatchError("chi entries must live in the q-variables")
            p = Polynomial(ring, {m + (0,) * n: c for m, c in p.terms.items()})
        if p.degree_in(range(n, 2 * n)) > 0:
            raise ValueError(f"chi entry ({i},{j}) depends on a momentum variable")
        entries[(n + i, n + j)] = p
    return PoissonStructure(ring, entries)


def plane_structure(p: Union[Polynomial, str]) -> PoissonStructure:
    """``{u1, u2} = p`` on Q[u1, u2]; Jacobi holds for every ``p``."""
    ring = Ring(("u1", "u2"))
    if isinstance(p, str):
        p = parse_poly(p, ring)
    elif p.ring != ring:
        raise RingMismatchError("plane structure polynomial must be in (u1, u2)")
    return PoissonStructure(ring, {(0, 1): p})


def zero_structure(n: int, names: Optional[Sequence[str]] = None) -> PoissonStructure:
    if names is None:
        names = tuple(f"x{i + 1}" for i in range(n))
    return PoissonStructure(Ring(tuple(names)), {})


def canonical_cotangent(n: int) -> PoissonStructure:
    return magnetic_cotangent(n, {})
