"""Alternating forms and chains on the module of Kahler differentials.

For a polynomial ring the differentials are free on ``dx_1..dx_n``, so a
k-form is fixed by its values on strictly increasing index tuples.  The
Poisson structure makes this module a Lie-Rinehart algebra: the anchor sends
``dx_i`` to ``{x_i, -}`` and ``[dx_i, dx_j] = d{x_i, x_j}``.

Two differentials live here and must not be confused:

* :func:`kahler_d` is the universal derivation ``a -> da`` (a 1-form whose
  coefficients are the partial derivatives);
* :func:`ce_differential` is the cochain differential on forms, carrying the
  global sign ``(-1)^n`` on an n-form output.  With that sign a 0-form ``a``
  has ``(d a)(alpha) = -alpha(a)``.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, List, Mapping, Sequence, Tuple

from .poisson import (Derivation, PoissonStructure, _check_ring, bracket,
                      require_poisson)
from .poly import Polynomial, Ring, RingMismatchError

Index = Tuple[int, ...]


def _sort_sign(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sign of the sorting permutation and the sorted tuple; sign 0 on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    arr = idx[:]
    for a in range(len(arr)):
        for b in range(len(arr) - 1 - a):
            if arr[b] > arr[b + 1]:
                arr[b], arr[b + 1] = arr[b + 1], arr[b]
                sign = -sign
    return sign, tuple(arr)


class _Alternating:
    """Shared storage for forms and chains: one polynomial per increasing k-tuple."""

    __slots__ = ("ring", "k", "coeffs")

    def __init__(self, ring: Ring, k: int, coeffs: Mapping[Sequence[int], Polynomial] = ()):
        if k < 0:
            raise ValueError("arity must be nonnegative")
        self.ring = ring
        self.k = k
        store: Dict[Index, Polynomial] = {}
        for idx, p in dict(coeffs).items():
            idx = tuple(idx)
            if len(idx) != k:
                raise ValueError(f"index tuple {idx} does not have length {k}")
            if any(not 0 <= i < ring.n for i in idx):
                raise IndexError(f"index tuple {idx} out of range")
            if not isinstance(p, Polynomial):
                p = ring.const(p)
            _check_ring(ring, p)
            sign, key = _sort_sign(idx)
            if sign == 0:
                if p:
                    raise ValueError(f"repeated index in {idx}")
                continue
            total = store.get(key, ring.zero) + (p if sign > 0 else -p)
            if total:
                store[key] = total
            else:
                store.pop(key, None)
        self.coeffs = store

    @classmethod
    def _raw(cls, ring, k, coeffs):
        obj = cls.__new__(cls)
        obj.ring, obj.k, obj.coeffs = ring, k, {i: p for i, p in coeffs.items() if p}
        return obj

    @classmethod
    def zero(cls, ring: Ring, k: int):
        return cls._raw(ring, k, {})

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"ring {other.ring.names} != {self.ring.names}")
        if other.k != self.k:
            raise ValueError(f"arity mismatch {self.k} vs {other.k}")

    def __getitem__(self, idx) -> Polynomial:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = _sort_sign(idx)
        if sign == 0:
            return self.ring.zero
        p = self.coeffs.get(key)
        if p is None:
            return self.ring.zero
        return p if sign > 0 else -p

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for i, p in other.coeffs.items():
            out[i] = out[i] + p if i in out else p
        return self._raw(self.ring, self.k, out)

    def __neg__(self):
        return self._raw(self.ring, self.k, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, a) -> "_Alternating":
        return self._raw(self.ring, self.k, {i: p * a for i, p in self.coeffs.items()})

    def __mul__(self, a):
        if isinstance(a, _Alternating):
            return NotImplemented
        return self.scale(a)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, _Alternating):
            return NotImplemented
        return (type(self) is type(other) and self.ring == other.ring and self.k == other.k
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.ring, self.k, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items())

    def __repr__(self):
        body = ", ".join(f"{i}: {p}" for i, p in self.items())
        return f"{type(self).__name__}(k={self.k}, {{{body}}})"


class KForm(_Alternating):
    """Alternating A-multilinear k-form on the differentials, by basis values."""

    def __call__(self, *alphas: "KForm") -> Polynomial:
        """Evaluate on k general 1-forms by multilinearity."""
        if len(alphas) != self.k:
            raise ValueError(f"a {self.k}-form takes {self.k} arguments")
        for a in alphas:
            if not isinstance(a, KForm) or a.k != 1:
                raise TypeError("arguments must be 1-forms")
            _check_ring(self.ring, *a.coeffs.values())
        if self.k == 0:
            return self[()]
        out = self.ring.zero
        supports = [sorted(a.coeffs.items()) for a in alphas]
        for choice in product(*supports):
            idx = tuple(i[0] for i, _ in choice)
            v = self[idx]
            if v:
                t = v
                for _, c in choice:
                    t = t * c
                out = out + t
        return out


class KChain(_Alternating):
    """Degree-k element of the exterior algebra on (suspended) differentials."""


def one_form(ring: Ring, values: Sequence[Polynomial]) -> KForm:
    """1-form with ``alpha(dx_i) = values[i]`` (equivalently ``sum values[i] dx_i``)."""
    if len(values) != ring.n:
        raise ValueError("one value per generator is required")
    return KForm(ring, 1, {(i,): v for i, v in enumerate(values)})


def basis_one_form(ring: Ring, i: int) -> KForm:
    return KForm(ring, 1, {(i,): ring.one})


def kahler_d(f: Polynomial) -> KForm:
    """Universal derivation: ``df = sum_i (df/dx_i) dx_i``."""
    return KForm._raw(f.ring, 1, {(i,): f.diff(i) for i in range(f.ring.n)})


def zero_form(f: Polynomial) -> KForm:
    return KForm._raw(f.ring, 0, {(): f})


def one_form_derivation(theta: KForm) -> Derivation:
    """The derivation ``X_theta`` with ``X_theta(a) = theta(da)``."""
    if theta.k != 1:
        raise ValueError("expected a 1-form")
    return Derivation(theta.ring, tuple(theta[i] for i in range(theta.ring.n)))


def sharp(P: PoissonStructure, alpha: KForm) -> Derivation:
    """Anchor: ``dx_i -> {x_i, -}``, extended A-linearly."""
    _check_ring(P.ring, *alpha.coeffs.values())
    if alpha.k != 1:
        raise ValueError("expected a 1-form")
    n = P.n
    comps = [P.ring.zero] * n
    for (i,), a in alpha.coeffs.items():
        for j in range(n):
            pij = P.entry(i, j)
            if pij:
                comps[j] = comps[j] + a * pij
    return Derivation(P.ring, tuple(comps))


def poisson_two_form(P: PoissonStructure) -> KForm:
    """``pi(dx_i, dx_j) = P_ij``."""
    return KForm._raw(P.ring, 2, dict(P.entries))


def _basis_bracket(P: PoissonStructure, i: int, j: int) -> Dict[int, Polynomial]:
    """``[dx_i, dx_j] = d P_ij`` as a sparse coefficient map."""
    pij = P.entry(i, j)
    return {m: c for m in range(P.n) if (c := pij.diff(m))}


def bracket_one_forms(P: PoissonStructure, alpha: KForm, beta: KForm,
                      check: bool = True) -> KForm:
    """Bracket of 1-forms from ``[a du, b dv] = a{u,b}dv + b{a,v}du + ab d{u,v}``."""
    if alpha.k != 1 or beta.k != 1:
        raise ValueError("expected 1-forms")
    alpha._same(beta)
    _check_ring(P.ring, *alpha.coeffs.values())
    if check:
        require_poisson(P)
    ring = P.ring
    gens = ring.gens()
    out: Dict[int, Polynomial] = {}

    def add(idx, p):
        if p:
            out[idx] = out[idx] + p if idx in out else p

    for (i,), a in alpha.coeffs.items():
        for (j,), b in beta.coeffs.items():
            add(j, a * bracket(P, gens[i], b))
            add(i, b * bracket(P, a, gens[j]))
            ab = a * b
            for m, c in _basis_bracket(P, i, j).items():
                add(m, ab * c)
    return KForm._raw(ring, 1, {(m,): p for m, p in out.items()})


def lie_derivative_one_form(X: Derivation, alpha: KForm) -> KForm:
    """``lambda_X(b da) = X(b) da + b d(X(a))``."""
    if alpha.k != 1:
        raise ValueError("expected a 1-form")
    ring = alpha.ring
    out = KForm.zero(ring, 1)
    for (i,), b in alpha.coeffs.items():
        out = out + KForm._raw(ring, 1, {(i,): X(b)}) + kahler_d(X.components[i]).scale(b)
    return out


def bracket_one_forms_lie(P: PoissonStructure, alpha: KForm, beta: KForm) -> KForm:
    """Same bracket written as ``L_{alpha#} beta - L_{beta#} alpha - d pi(alpha, beta)``."""
    pi = poisson_two_form(P)
    return (lie_derivative_one_form(sharp(P, alpha), beta)
            - lie_derivative_one_form(sharp(P, beta), alpha)
            - kahler_d(pi(alpha, beta)))


def _eval_with_slot(omega: KForm, basis: Sequence[int], slot: int,
                    values: Mapping[int, Polynomial]) -> Polynomial:
    """``omega(dx_b1, .., V, .., dx_bk)`` with the 1-form ``V`` at ``slot``."""
    ring = omega.ring
    out = ring.zero
    idx = list(basis)
    for m, c in values.items():
        idx[slot] = m
        v = omega[tuple(idx)]
        if v:
            out = out + c * v
    return out


def ce_differential(P: PoissonStructure, omega: KForm, check: bool = True) -> KForm:
    """Cochain differential on forms, with the ``(-1)^n`` convention on n-form output::

        (d w)(a_1..a_n) = (-1)^n sum_i (-1)^(i-1) a_i(w(..^a_i..))
                        + (-1)^n sum_{j<k} (-1)^(j+k) w([a_j,a_k], ..^a_j..^a_k..)
    """
    if not isinstance(omega, KForm):
        raise TypeError("ce_differential acts on KForm values")
    _check_ring(P.ring, *omega.coeffs.values())
    if check:
        require_poisson(P)
    ring = P.ring
    n_out = omega.k + 1
    if n_out > ring.n or omega.is_zero():
        return KForm.zero(ring, n_out)
    gens = ring.gens()
    global_sign = -1 if n_out % 2 else 1
    brackets = {(a, b): _basis_bracket(P, a, b) for a, b in combinations(range(ring.n), 2)}
    out: Dict[Index, Polynomial] = {}
    for I in combinations(range(ring.n), n_out):
        total = ring.zero
        for pos in range(n_out):
            rest = I[:pos] + I[pos + 1:]
            v = omega[rest]
            if v:
                t = bracket(P, gens[I[pos]], v)
                total = total + t if pos % 2 == 0 else total - t
        for j, k in combinations(range(n_out), 2):
            br = brackets[(I[j], I[k])]
            if not br:
                continue
            rest = [I[x] for x in range(n_out) if x != j and x != k]
            t = _eval_with_slot(omega, [0] + rest, 0, br)
            total = total + t if (j + k) % 2 == 0 else total - t
        if total:
            out[I] = total if global_sign > 0 else -total
    return KForm._raw(ring, n_out, out)


def de_rham(omega: KForm) -> KForm:
    """Classical exterior derivative of coefficient polynomials (no bracket involved)."""
    ring = omega.ring
    n_out = omega.k + 1
    out: Dict[Index, Polynomial] = {}
    if n_out > ring.n:
        return KForm.zero(ring, n_out)
    for I in combinations(range(ring.n), n_out):
        total = ring.zero
        for pos in range(n_out):
            v = omega[I[:pos] + I[pos + 1:]]
            if v:
                t = v.diff(I[pos])
                total = total + t if pos % 2 == 0 else total - t
        if total:
            out[I] = total
    return KForm._raw(ring, n_out, out)


def wedge(omega: KForm, eta: KForm) -> KForm:
    """Shuffle product ``(w ^ e)(x..) = sum_sigma sign(sigma) w(x_sigma..) e(x_sigma..)``."""
    if not isinstance(omega, KForm) or not isinstance(eta, KForm):
        raise TypeError("wedge acts on KForm values")
    if omega.ring != eta.ring:
        raise RingMismatchError("wedge of forms over different rings")
    ring = omega.ring
    p, q = omega.k, eta.k
    n_out = p + q
    out: Dict[Index, Polynomial] = {}
    if n_out > ring.n:
        return KForm.zero(ring, n_out)
    for I in combinations(range(ring.n), n_out):
        total = ring.zero
        for S in combinations(range(n_out), p):
            T = [x for x in range(n_out) if x not in S]
            a = omega[tuple(I[s] for s in S)]
            if not a:
                continue
            b = eta[tuple(I[t] for t in T)]
            if not b:
                continue
            sign, _ = _sort_sign(list(S) + T)
            total = total + a * b if sign > 0 else total - a * b
        if total:
            out[I] = total
    return KForm._raw(ring, n_out, out)


def lie_derivative_form(P: PoissonStructure, X: Derivation, omega: KForm) -> KForm:
    """``(L_X w)(a_1..a_k) = X(w(a_1..a_k)) - sum_i w(a_1.., L_X a_i, ..a_k)``."""
    _check_ring(P.ring, *omega.coeffs.values())
    _check_ring(P.ring, *X.components)
    ring = omega.ring
    k = omega.k
    if k == 0:
        return KForm._raw(ring, 0, {(): X(omega[()])})
    lie_basis = [lie_derivative_one_form(X, basis_one_form(ring, a)) for a in range(ring.n)]
    out: Dict[Index, Polynomial] = {}
    for I in combinations(range(ring.n), k):
        total = X(omega[I])
        for slot in range(k):
            vals = {m: c for (m,), c in lie_basis[I[slot]].coeffs.items()}
            total = total - _eval_with_slot(omega, I, slot, vals)
        if total:
            out[I] = total
    return KForm._raw(ring, k, out)


def koszul_boundary(P: PoissonStructure, chain: KChain, check: bool = True) -> KChain:
    """Boundary on chains with the right action ``a . dx_i = {a, x_i}``::

        d(a<a_1..a_n>) = sum_i (-1)^(i-1) (a.a_i) <..^a_i..>
                       + sum_{j<k} (-1)^(j+k) a <[a_j,a_k], ..^a_j..^a_k..>
    """
    if not isinstance(chain, KChain):
        raise TypeError("koszul_boundary acts on KChain values")
    if chain.k == 0:
        raise ValueError("boundary is defined on chains of degree >= 1")
    _check_ring(P.ring, *chain.coeffs.values())
    if check:
        require_poisson(P)
    ring = P.ring
    gens = ring.gens()
    out: Dict[Index, Polynomial] = {}

    def add(idx, p):
        sign, key = _sort_sign(idx)
        if sign == 0 or not p:
            return
        if sign < 0:
            p = -p
        if key in out:
            s = out[key] + p
            if s:
                out[key] = s
            else:
                del out[key]
        else:
            out[key] = p

    for I, a in chain.coeffs.items():
        n = len(I)
        for pos in range(n):
            t = bracket(P, a, gens[I[pos]])
            add(I[:pos] + I[pos + 1:], t if pos % 2 == 0 else -t)
        for j, k in combinations(range(n), 2):
            rest = tuple(I[x] for x in range(n) if x != j and x != k)
            sgn = 1 if (j + k) % 2 == 0 else -1
            for m, c in _basis_bracket(P, I[j], I[k]).items():
                add((m,) + rest, a * c * sgn)
    return KChain._raw(ring, chain.k - 1, out)


def forms_basis_indices(n: int, k: int) -> List[Index]:
    return list(combinations(range(n), k))


def form_from_text(ring: Ring, k: int, coeffs: Mapping[str, str], gaussian: bool = False,
                   cls=KForm):
    """Build a form from ``{"i,j": "<poly>"}`` with 0-based indices or generator names."""
    from .poly import parse_poly
    out = {}
    for key, text in coeffs.items():
        parts = [s.strip() for s in key.split(",")] if key.strip() else []
        idx = []
        for s in parts:
            idx.append(int(s) if s.lstrip("-").isdigit() else ring.index(s))
        out[tuple(idx)] = parse_poly(text, ring, gaussian=gaussian)
    return cls(ring, k, out)


def form_to_text(omega: _Alternating) -> Dict[str, object]:
    return {"k": omega.k,
            "coeffs": {",".join(str(i) for i in idx): str(p) for idx, p in omega.items()}}
