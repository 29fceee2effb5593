"""Exact L-functions of quadratic twists of elliptic curves over F_q(t).

The library computes L-polynomials of twisted elliptic fibrations over the
projective line by fiberwise point counting, extracts analytic ranks, root
numbers and extra-vanishing statistics over whole twist families, certifies
the genericity conditions on twisting polynomials, and measures the
extra-vanishing locus of small finite orthogonal groups by exhaustive
enumeration.
"""

__version__ = "0.1.0"
