"""Exact computations for Poisson algebras over polynomial rings.

Modules: ``poly`` (polynomials over Q and Q(i)), ``poisson`` (bivectors and
brackets), ``forms`` (forms, chains and their differentials), ``homalg``
(graded cohomology and homology), ``connect`` (rank-one connections and
extensions), ``quantize`` (prequantization and exponential waves), ``reduce``
(the massless particle reduction) and ``cli``.
"""

__version__ = "0.1.0"
