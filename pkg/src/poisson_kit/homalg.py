"""Graded exact linear algebra for Poisson cohomology and homology.

When every bivector entry is homogeneous of one degree ``r``, the cochain
differential maps forms with degree-``d`` coefficients to forms with
degree-``d+r-1`` coefficients, and the chain boundary does the same.  Each
slice ``(k, d)`` is a finite-dimensional Q-vector space, so dimensions of
kernels, images and (co)homology come out of exact rank computations.

Inhomogeneous bivectors are only handled in ``cutoff`` mode, which reports
dimensions for the truncation to coefficients of degree ``<= d`` (see
:func:`cohomology_dims`).

:func:`ce_lie_algebra_cohomology` is an independent route for Lie-Poisson
structures: it builds the classical Chevalley-Eilenberg complex of the Lie
algebra with coefficients in homogeneous polynomials directly from the
structure constants, without touching :mod:`poisson_kit.forms`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from . import linalg
from .forms import KChain, KForm, ce_differential, koszul_boundary
from .poisson import PoissonStructure, _check_ring, require_poisson
from .poly import Monomial, Polynomial, monomials_of_degree


class InhomogeneousBivectorError(ValueError):
    """Graded mode needs all bivector entries homogeneous of one degree."""


class NotClosedError(ValueError):
    """The form handed to the coboundary solver is not closed."""


@dataclass(frozen=True)
class GradedBasis:
    """Basis of the slice of k-forms (or k-chains) with degree-d coefficients.

    Ordered by index tuple (lexicographic), then monomial (descending lex).
    """

    n: int
    k: int
    d: int
    tuples: Tuple[Tuple[int, ...], ...] = field(init=False)
    monomials: Tuple[Monomial, ...] = field(init=False)

    def __post_init__(self):
        tuples = tuple(combinations(range(self.n), self.k)) if 0 <= self.k <= self.n else ()
        monos = tuple(monomials_of_degree(self.n, self.d)) if self.d >= 0 else ()
        object.__setattr__(self, "tuples", tuples)
        object.__setattr__(self, "monomials", monos)

    def __len__(self):
        return len(self.tuples) * len(self.monomials)

    def elements(self) -> List[Tuple[Tuple[int, ...], Monomial]]:
        return [(t, m) for t in self.tuples for m in self.monomials]

    def position(self) -> Dict[Tuple[Tuple[int, ...], Monomial], int]:
        return {e: i for i, e in enumerate(self.elements())}


@dataclass(frozen=True)
class DimRow:
    k: int
    d: int
    z: int
    b: int
    h: int

    def as_dict(self):
        return {"k": self.k, "d": self.d, "z": self.z, "b": self.b, "h": self.h}


@dataclass(frozen=True)
class DimTable:
    """Rows ``(k, d) -> (dim kernel, dim image from below, dim (co)homology)``.

    ``kind`` is ``"cohomology"`` or ``"homology"``; ``mode`` is ``"graded"``
    for the exact per-degree computation or ``"cutoff"`` for a truncated
    complex of an inhomogeneous bivector, where ``d`` is the degree bound.
    """

    kind: str
    mode: str
    rows: Tuple[DimRow, ...]

    def __post_init__(self):
        for row in self.rows:
            if row.h != row.z - row.b or row.h < 0:
                raise ValueError(f"inconsistent dimension row {row}")

    def get(self, k: int, d: int) -> DimRow:
        for row in self.rows:
            if row.k == k and row.d == d:
                return row
        raise KeyError((k, d))

    def h(self, k: int, d: int) -> int:
        return self.get(k, d).h

    def dims(self) -> Dict[Tuple[int, int], int]:
        return {(r.k, r.d): r.h for r in self.rows}

    def to_json(self) -> Dict[str, object]:
        return {"kind": self.kind, "mode": self.mode, "rows": [r.as_dict() for r in self.rows]}

    def __str__(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _degree_shift(P: PoissonStructure) -> int:
    try:
        r = P.bivector_degree()
    except ValueError as exc:
        raise InhomogeneousBivectorError(str(exc)) from None
    # the zero bivector gives the zero map; any shift works, use the linear one
    return 0 if r is None else r - 1


def _vector(alt, basis: GradedBasis, pos) -> Dict[int, Fraction]:
    out = {}
    for idx, p in alt.coeffs.items():
        for m, c in p.terms.items():
            key = (idx, m)
            if key not in pos:
                raise ValueError(f"term {key} outside the target slice")
            out[pos[key]] = c
    return out


def _slice_matrix(P, kind: str, k: int, d: int) -> Tuple[linalg.Matrix, int, int]:
    """Matrix of the (co)boundary on slice (k, d) and the (rows, cols) sizes."""
    shift = _degree_shift(P)
    ring = P.ring
    src = GradedBasis(ring.n, k, d)
    tk = k + 1 if kind == "cohomology" else k - 1
    tgt = GradedBasis(ring.n, tk, d + shift)
    pos = tgt.position()
    cls = KForm if kind == "cohomology" else KChain
    columns = []
    for idx, m in src.elements():
        elem = cls._raw(ring, k, {idx: ring.monomial(m)})
        if kind == "cohomology":
            image = ce_differential(P, elem, check=False)
        else:
            image = koszul_boundary(P, elem, check=False)
        columns.append(_vector(image, tgt, pos))
    return linalg.dense_from_columns(columns, len(tgt)), len(tgt), len(src)


def differential_matrix(P: PoissonStructure, k: int, d: int) -> linalg.Matrix:
    """Matrix of the cochain differential from slice ``(k, d)`` to ``(k+1, d+r-1)``.

    Columns follow the source :class:`GradedBasis` enumeration, rows the target.
    """
    require_poisson(P)
    m, _, _ = _slice_matrix(P, "cohomology", k, d)
    return m


def boundary_matrix(P: PoissonStructure, k: int, d: int) -> linalg.Matrix:
    require_poisson(P)
    m, _, _ = _slice_matrix(P, "homology", k, d)
    return m


def _rank_of_slice(P, kind, k, d, cache) -> Tuple[int, int]:
    """(rank, source dimension) of the map out of slice (k, d); zero outside range."""
    key = (k, d)
    if key not in cache:
        if d < 0 or k < 0 or k > P.n:
            cache[key] = (0, 0)
        elif (kind == "homology" and k == 0) or (kind == "cohomology" and k == P.n):
            cache[key] = (0, len(GradedBasis(P.n, k, d)))
        else:
            m, nrows, ncols = _slice_matrix(P, kind, k, d)
            cache[key] = (linalg.rank(m) if nrows and ncols else 0, ncols)
    return cache[key]


def _graded_table(P: PoissonStructure, kind: str, k_max: int, d_max: int) -> DimTable:
    require_poisson(P)
    shift = _degree_shift(P)
    cache: Dict[Tuple[int, int], Tuple[int, int]] = {}
    rows = []
    for k in range(k_max + 1):
        for d in range(d_max + 1):
            rk, dim = _rank_of_slice(P, kind, k, d, cache)
            z = dim - rk
            pk = k - 1 if kind == "cohomology" else k + 1
            b, _ = _rank_of_slice(P, kind, pk, d - shift, cache)
            rows.append(DimRow(k, d, z, b, z - b))
    return DimTable(kind, "graded", tuple(rows))


def _upto_basis(n: int, k: int, d_max: int) -> List[Tuple[Tuple[int, ...], Monomial]]:
    out = []
    for d in range(d_max + 1):
        out.extend(GradedBasis(n, k, d).elements())
    return out


def _cutoff_table(P: PoissonStructure, kind: str, k_max: int, d_max: int) -> DimTable:
    """Truncated complex: cochains with coefficients of degree <= D.

    ``z`` counts truncated cochains that are closed, ``b`` the part of the image
    of truncated cochains of one lower arity that is itself truncated, so
    ``b <= z`` and ``h = z - b`` describes the truncation only.
    """
    require_poisson(P)
    ring = P.ring
    cls = KForm if kind == "cohomology" else KChain
    op = ((lambda e: ce_differential(P, e, check=False)) if kind == "cohomology"
          else (lambda e: koszul_boundary(P, e, check=False)))
    step = 1 if kind == "cohomology" else -1

    def image_vectors(k, D):
        """Images of the degree-<=D basis of arity k, as sparse term maps."""
        vecs = []
        for idx, m in _upto_basis(ring.n, k, D):
            img = op(cls._raw(ring, k, {idx: ring.monomial(m)}))
            vecs.append({(i, mm): c for i, p in img.coeffs.items() for mm, c in p.terms.items()})
        return vecs

    def rank_of(vecs, extra_keys=()):
        keys = sorted({key for v in vecs for key in v} | set(extra_keys))
        pos = {key: i for i, key in enumerate(keys)}
        rowsm = [[Fraction(0)] * len(keys) for _ in vecs]
        for r, v in enumerate(vecs):
            for key, c in v.items():
                rowsm[r][pos[key]] = Fraction(c)
        return linalg.rank(rowsm) if rowsm and keys else 0

    rows = []
    for k in range(k_max + 1):
        for D in range(d_max + 1):
            dim = len(_upto_basis(ring.n, k, D)) if k <= ring.n else 0
            has_map = 0 <= k + step <= ring.n and dim
            rk = rank_of(image_vectors(k, D)) if has_map else 0
            z = dim - rk
            pk = k - step
            if 0 <= pk <= ring.n and dim and (kind == "cohomology" or pk >= 1):
                U = image_vectors(pk, D)
                V = [{key: 1} for key in _upto_basis(ring.n, k, D)]
                b = rank_of(U) + len(V) - rank_of(U + V)
            else:
                b = 0
            rows.append(DimRow(k, D, z, b, z - b))
    return DimTable(kind, "cutoff", tuple(rows))


def cohomology_dims(P: PoissonStructure, k_max: int, d_max: int, cutoff: bool = False) -> DimTable:
    """Poisson cohomology dimensions for arities ``<= k_max`` and degrees ``<= d_max``."""
    if cutoff:
        return _cutoff_table(P, "cohomology", k_max, d_max)
    return _graded_table(P, "cohomology", k_max, d_max)


def homology_dims(P: PoissonStructure, k_max: int, d_max: int, cutoff: bool = False) -> DimTable:
    """Poisson homology dimensions of the chain complex of differentials."""
    if cutoff:
        return _cutoff_table(P, "homology", k_max, d_max)
    return _graded_table(P, "homology", k_max, d_max)


def solve_coboundary(P: PoissonStructure, omega: KForm, bound: int) -> Optional[KForm]:
    """Find ``eta`` with ``d eta = omega`` and coefficients of degree ``<= bound``.

    The search covers every coefficient polynomial of degree ``<= bound``,
    constants included.  ``None`` certifies that the exact linear system over
    those coefficients is inconsistent.
    """
    _check_ring(P.ring, *omega.coeffs.values())
    if omega.k < 1:
        raise ValueError("a 0-form is never a coboundary target")
    require_poisson(P)
    if not ce_differential(P, omega, check=False).is_zero():
        raise NotClosedError("form is not closed")
    ring = P.ring
    unknowns = _upto_basis(ring.n, omega.k - 1, bound)
    images = []
    for idx, m in unknowns:
        img = ce_differential(P, KForm._raw(ring, omega.k - 1, {idx: ring.monomial(m)}),
                              check=False)
        images.append({(i, mm): c for i, p in img.coeffs.items() for mm, c in p.terms.items()})
    target = {(i, mm): c for i, p in omega.coeffs.items() for mm, c in p.terms.items()}
    keys = sorted({key for v in images for key in v} | set(target))
    pos = {key: i for i, key in enumerate(keys)}
    columns = [{pos[key]: c for key, c in v.items()} for v in images]
    if not columns:
        return KForm.zero(ring, omega.k - 1) if omega.is_zero() else None
    A = linalg.dense_from_columns(columns, len(keys))
    b = [Fraction(0)] * len(keys)
    for key, c in target.items():
        b[pos[key]] = c
    x = linalg.solve(A, b)
    if x is None:
        return None
    coeffs: Dict[Tuple[int, ...], Polynomial] = {}
    for (idx, m), v in zip(unknowns, x):
        if v:
            coeffs[idx] = coeffs.get(idx, ring.zero) + ring.monomial(m, v)
    eta = KForm(ring, omega.k - 1, coeffs)
    if ce_differential(P, eta, check=False) != omega:
        raise ArithmeticError("coboundary solution failed re-verification")
    return eta


# -- independent Lie-algebra route --------------------------------------------------


def _check_lie(c) -> int:
    n = len(c)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if Fraction(c[i][j][k]) != -Fraction(c[j][i][k]):
                    raise ValueError("structure constants are not antisymmetric")
    for i, j, k in combinations(range(n), 3):
        for l in range(n):
            s = sum(Fraction(c[i][j][m]) * Fraction(c[m][k][l])
                    + Fraction(c[j][k][m]) * Fraction(c[m][i][l])
                    + Fraction(c[k][i][m]) * Fraction(c[m][j][l]) for m in range(n))
            if s:
                raise ValueError(f"structure constants violate Jacobi at ({i},{j},{k})")
    return n


def _coadjoint_action(c, n: int, d: int) -> List[linalg.Matrix]:
    """Matrices of ``f -> {x_i, f}`` on degree-d polynomials, from ``c`` alone.

    On a monomial ``m``: ``{x_i, m} = sum_{j,k} c_ij^k m_j x^(m - e_j + e_k)``.
    """
    monos = monomials_of_degree(n, d)
    pos = {m: t for t, m in enumerate(monos)}
    mats = []
    for i in range(n):
        M = [[Fraction(0)] * len(monos) for _ in monos]
        for col, m in enumerate(monos):
            for j in range(n):
                if not m[j]:
                    continue
                for k in range(n):
                    cij = Fraction(c[i][j][k])
                    if not cij:
                        continue
                    e = list(m)
                    e[j] -= 1
                    e[k] += 1
                    M[pos[tuple(e)]][col] += cij * m[j]
        mats.append(M)
    return mats


def _ce_matrix(c, n: int, rho: List[linalg.Matrix], dim_v: int, k: int) -> linalg.Matrix:
    """Classical CE differential C^k(g, V) -> C^(k+1)(g, V) as a dense matrix.

    ``(dw)(e_i0..e_ik) = sum_l (-1)^l rho(e_il) w(..^..) + sum_{l<m} (-1)^(l+m) w([e_il,e_im], ..)``
    """
    src = list(combinations(range(n), k))
    tgt = list(combinations(range(n), k + 1))
    spos = {t: i for i, t in enumerate(src)}
    M = [[Fraction(0)] * (len(src) * dim_v) for _ in range(len(tgt) * dim_v)]

    def src_slot(idx):
        """(sign, position) of a possibly unsorted index tuple in the source basis."""
        if len(set(idx)) != len(idx):
            return 0, None
        perm = sorted(range(len(idx)), key=lambda t: idx[t])
        sign = 1
        seen = [False] * len(idx)
        for a in range(len(idx)):
            if seen[a]:
                continue
            length = 0
            b = a
            while not seen[b]:
                seen[b] = True
                b = perm[b]
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign, spos[tuple(sorted(idx))]

    for ti, I in enumerate(tgt):
        for l in range(k + 1):
            rest = I[:l] + I[l + 1:]
            sj = spos[rest]
            sgn = -1 if l % 2 else 1
            R = rho[I[l]]
            for a in range(dim_v):
                for b in range(dim_v):
                    if R[a][b]:
                        M[ti * dim_v + a][sj * dim_v + b] += sgn * R[a][b]
        for l, m in combinations(range(k + 1), 2):
            rest = tuple(I[x] for x in range(k + 1) if x not in (l, m))
            sgn = -1 if (l + m) % 2 else 1
            for q in range(n):
                cq = Fraction(c[I[l]][I[m]][q])
                if not cq:
                    continue
                s2, sj = src_slot((q,) + rest)
                if not s2:
                    continue
                for a in range(dim_v):
                    M[ti * dim_v + a][sj * dim_v + a] += sgn * s2 * cq
    return M


def ce_lie_algebra_cohomology(structure_constants, d_max: int, k_max: int) -> DimTable:
    """Lie algebra cohomology of ``g`` with values in degree-d polynomials on ``g``.

    The action is ``x . f = {x, f}`` for the linear bracket defined by the
    structure constants.  Row ``(k, d)`` is ``H^k(g, S^d)``.
    """
    c = structure_constants
    n = _check_lie(c)
    rows = []
    for d in range(d_max + 1):
        rho = _coadjoint_action(c, n, d)
        dim_v = len(monomials_of_degree(n, d))
        ranks = {}
        for k in range(-1, k_max + 1):
            if 0 <= k < n:
                M = _ce_matrix(c, n, rho, dim_v, k)
                ranks[k] = linalg.rank(M) if M and M[0] else 0
            else:
                ranks[k] = 0
        for k in range(k_max + 1):
            dim = comb(n, k) * dim_v if k <= n else 0
            z = dim - ranks[k]
            b = ranks[k - 1]
            rows.append(DimRow(k, d, z, b, z - b))
    rows.sort(key=lambda r: (r.k, r.d))
    return DimTable("cohomology", "graded", tuple(rows))


def zero_structure_dims(n: int, k: int, d: int) -> int:
    """``C(n, k) * dim A_d`` for a polynomial ring in ``n`` variables."""
    return comb(n, k) * comb(d + n - 1, n - 1) if n else (1 if k == 0 and d == 0 else 0)
