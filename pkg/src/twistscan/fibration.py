"""Elliptic fibrations y^2 = x^3 + a(t)x^2 + b(t)x + c(t) over F_q(t) and
their quadratic twists g(t)y^2 = cubic.

A twist family carries the base Weierstrass data together with the twisting
polynomial g; the twisted curve in standard form has coefficients
(a g, b g^2, c g^3), so its invariants are c4 g^2, c6 g^3 and disc g^6.
Reduction at a place is read off the minimal model there: for p >= 5 the
model is minimal iff v(c4) < 4 or v(disc) < 12, good iff v(disc) = 0 after
minimalization, multiplicative iff v(c4) = 0 < v(disc), additive otherwise
(tame, conductor exponent 2).  The place at infinity is handled through
t -> 1/u, i.e. valuations -deg and leading coefficients.

Split vs nonsplit multiplicative reduction is decided by the tangent
criterion: with x0 the double root and x1 the simple root of the reduced
cubic, the node is split iff x0 - x1 is a square in the residue field.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import (
    FiniteField,
    InvalidInput,
    Poly,
    embed,
    factor,
    is_irreducible,
    is_squarefree,
    lift,
    make_field,
    poly_gcd,
    quadratic_character,
    roots_in_field,
)

GOOD = "GOOD"
SPLIT_MULT = "SPLIT_MULT"
NONSPLIT_MULT = "NONSPLIT_MULT"
ADDITIVE = "ADDITIVE"


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True)
class PlaceReport:
    """Reduction data at one closed point of P^1."""

    place: object  # monic irreducible Poly, or INFINITY
    reduction: str
    exponent: int
    degree: int

    def __post_init__(self):
        mult = self.reduction in (SPLIT_MULT, NONSPLIT_MULT)
        expected = 0 if self.reduction == GOOD else (1 if mult else 2)
        if self.exponent != expected:
            raise InvalidInput("conductor exponent inconsistent with type")


def _valuation(h: Poly, piece: Poly) -> int:
    """Multiplicity of the irreducible piece in h (h nonzero)."""
    v = 0
    while True:
        q, r = divmod(h, piece)
        if not r.is_zero():
            return v
        h = q
        v += 1


def _root_multiplicity(h: Poly, t0: int) -> int:
    """Multiplicity of t0 as a root of h, by synthetic division."""
    F = h.field
    v = 0
    coeffs = list(h.coeffs)
    while coeffs:
        # evaluate and divide by (t - t0) in one Horner pass
        acc = 0
        out = []
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, t0), c)
            out.append(acc)
        if acc != 0:
            return v
        coeffs = list(reversed(out[:-1]))
        v += 1
    return v


def _exact_quotient_value(h: Poly, t0: int, order: int) -> int:
    """Value of h / (t - t0)^order at t0; requires (t - t0)^order | h."""
    F = h.field
    coeffs = list(h.coeffs)
    for _ in range(order):
        acc = 0
        out = []
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, t0), c)
            out.append(acc)
        if acc != 0:
            raise InvalidInput("inexact division in minimal model")
        coeffs = list(reversed(out[:-1]))
    acc = 0
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, t0), c)
    return acc


class TwistFamily:
    """Immutable quadratic twist family over fam.field(t).

    Use :func:`build_twist_family`.  All polynomials live over the twist
    coefficient field; the base triple (a, b, c) is lifted there if needed.
    """

    def __init__(self, a: Poly, b: Poly, c: Poly, g: Poly):
        self.field = g.field
        self.a, self.b, self.c, self.g = a, b, c, g
        F = self.field

        def ip(k):  # small integer as a field constant
            return Poly.constant(F, k % F.p)

        self.c4 = ip(16) * (a * a) - ip(48) * b
        self.c6 = ip(-64) * (a * a * a) + ip(288) * (a * b) - ip(864) * c
        disc_cubic = (ip(18) * a * b * c - ip(4) * (a * a * a) * c
                      + (a * a) * (b * b) - ip(4) * (b * b * b)
                      - ip(27) * (c * c))
        self.disc = ip(16) * disc_cubic
        # internal identity check: c4^3 - c6^2 = 1728 disc
        assert (self.c4 * self.c4 * self.c4 - self.c6 * self.c6
                == ip(1728) * self.disc)
        self._bad = None
        self._base_bad = None
        self._lift_cache: dict[tuple[int, int], tuple[Poly, ...]] = {}

    def fingerprint(self) -> tuple:
        return (self.field.p, self.field.n, self.a.coeffs, self.b.coeffs,
                self.c.coeffs, self.g.coeffs)

    def base_fingerprint(self) -> tuple:
        return (self.field.p, self.field.n, self.a.coeffs, self.b.coeffs,
                self.c.coeffs)

    def is_twisted(self) -> bool:
        return self.g.degree > 0 or self.g.coeffs != (1,)

    def untwisted(self) -> "TwistFamily":
        if not self.is_twisted():
            return self
        return TwistFamily(self.a, self.b, self.c,
                           Poly(self.field, (1,), trusted=True))

    def base_change(self, field: FiniteField) -> "TwistFamily":
        if field == self.field:
            return self
        return build_twist_family(lift(self.a, field), lift(self.b, field),
                                  lift(self.c, field), lift(self.g, field))

    def lifted(self, field: FiniteField) -> tuple[Poly, Poly, Poly, Poly, Poly, Poly, Poly]:
        """(a, b, c, g, c4, c6, disc) over an extension field, cached."""
        key = (field.p, field.n)
        out = self._lift_cache.get(key)
        if out is None:
            out = tuple(lift(h, field) for h in
                        (self.a, self.b, self.c, self.g, self.c4, self.c6, self.disc))
            self._lift_cache[key] = out
        return out

    def __repr__(self):
        return (f"TwistFamily(p={self.field.p}, n={self.field.n}, "
                f"a={self.a!r}, b={self.b!r}, c={self.c!r}, g={self.g!r})")


def build_twist_family(a: Poly, b: Poly, c: Poly, g: Poly) -> TwistFamily:
    """Validate and build a twist family.

    Rejects a singular generic fiber (disc = 0), a constant j-invariant,
    and a twisting polynomial that is neither squarefree nor a nonzero
    constant.
    """
    field = g.field
    if any(h.field.p != field.p for h in (a, b, c)):
        raise InvalidInput("mixed characteristics")
    if any(field.n % h.field.n != 0 for h in (a, b, c)):
        raise InvalidInput("base coefficients do not embed in the twist field")
    a, b, c = (lift(h, field) for h in (a, b, c))
    if g.is_zero():
        raise InvalidInput("zero twisting polynomial")
    if g.degree > 0 and not is_squarefree(g):
        raise InvalidInput("twisting polynomial must be squarefree")
    fam = TwistFamily(a, b, c, g)
    if fam.disc.is_zero():
        raise InvalidInput("singular generic fiber: discriminant is zero")
    if fam.c4.is_zero():
        raise InvalidInput("constant j-invariant (j = 0)")
    num = fam.c4 * fam.c4 * fam.c4
    den = fam.disc
    gg = poly_gcd(num, den)
    if (num // gg).degree == 0 and (den // gg).degree == 0:
        raise InvalidInput("constant j-invariant")
    return fam


def residue_field_and_root(fam: TwistFamily, place: Poly) -> tuple[FiniteField, int]:
    """Residue field at a finite place, with a deterministic root of it."""
    e = place.degree
    kv = make_field(fam.field.p, fam.field.n * e)
    theta = roots_in_field(place, kv)[0]
    return kv, theta


def _mult_split_sign(P: int, Q: int, kv: FiniteField) -> str:
    """Split/nonsplit for a nodal cubic x^3 + Px + Q over the residue field.

    The double root is x0 = -3Q/(2P) and the simple root x1 = -2 x0; the
    node is split iff x0 - x1 = 3 x0 is a square.
    """
    x0 = kv.mul(kv.neg(kv.mul(3 % kv.p, Q)), kv.inv(kv.mul(2 % kv.p, P)))
    w = kv.mul(3 % kv.p, x0)
    return SPLIT_MULT if quadratic_character(kv, w) == 1 else NONSPLIT_MULT


def classify_place(fam: TwistFamily, place) -> PlaceReport:
    """Reduction type and conductor exponent of the twisted curve at a place.

    The place is a monic irreducible polynomial over the family's
    coefficient field, or INFINITY.
    """
    if place is INFINITY:
        return _classify_infinity(fam)
    if not isinstance(place, Poly) or place.field != fam.field:
        raise InvalidInput("place must be a polynomial over the family field")
    place = place.monic()
    if not is_irreducible(place):
        raise InvalidInput("reducible place polynomial")
    vg = _valuation(fam.g, place)
    v4 = 2 * vg + _valuation(fam.c4, place)
    vD = 6 * vg + _valuation(fam.disc, place)
    r = min(v4 // 4, vD // 12)
    v4m, vDm = v4 - 4 * r, vD - 12 * r
    deg = place.degree
    if vDm == 0:
        return PlaceReport(place, GOOD, 0, deg)
    if v4m > 0:
        return PlaceReport(place, ADDITIVE, 2, deg)
    kv, theta = residue_field_and_root(fam, place)
    g2c4 = fam.g * fam.g * fam.c4
    g3c6 = fam.g * fam.g * fam.g * fam.c6
    pik = place
    for _ in range(4 * r - 1):
        pik = pik * place
    c4v = (lift(g2c4 // pik, kv).evaluate(theta) if r > 0
           else lift(g2c4, kv).evaluate(theta))
    pik6 = place
    for _ in range(6 * r - 1):
        pik6 = pik6 * place
    c6v = (lift(g3c6 // pik6, kv).evaluate(theta) if r > 0
           else lift(g3c6, kv).evaluate(theta))
    P = kv.neg(kv.mul(27 % kv.p, c4v))
    Q = kv.neg(kv.mul(54 % kv.p, c6v))
    return PlaceReport(place, _mult_split_sign(P, Q, kv), 1, deg)


def _infinity_data(fam: TwistFamily):
    """Valuations and residual (c4, c6) of the minimal model at infinity."""
    d4 = 2 * fam.g.degree + fam.c4.degree
    d6 = 3 * fam.g.degree + fam.c6.degree if not fam.c6.is_zero() else None
    dD = 6 * fam.g.degree + fam.disc.degree
    r = max(-(-d4 // 4), -(-dD // 12))
    v4m = 4 * r - d4
    vDm = 12 * r - dD
    F = fam.field
    lc4 = F.mul(F.pow(fam.g.lc, 2), fam.c4.lc)
    c4v = lc4 if v4m == 0 else 0
    if d6 is None:
        c6v = 0
    else:
        lc6 = F.mul(F.pow(fam.g.lc, 3), fam.c6.lc)
        c6v = lc6 if 6 * r - d6 == 0 else 0
    return v4m, vDm, c4v, c6v


def _classify_infinity(fam: TwistFamily) -> PlaceReport:
    v4m, vDm, c4v, c6v = _infinity_data(fam)
    if vDm == 0:
        return PlaceReport(INFINITY, GOOD, 0, 1)
    if v4m > 0:
        return PlaceReport(INFINITY, ADDITIVE, 2, 1)
    F = fam.field
    P = F.neg(F.mul(27 % F.p, c4v))
    Q = F.neg(F.mul(54 % F.p, c6v))
    return PlaceReport(INFINITY, _mult_split_sign(P, Q, F), 1, 1)


def bad_set(fam: TwistFamily) -> list[PlaceReport]:
    """All places with conductor exponent >= 1, in a deterministic order
    (by degree then coefficient sequence, INFINITY last)."""
    if fam._bad is None:
        candidates = {}
        for h in (fam.disc, fam.g):
            if h.degree > 0:
                for piece, _ in factor(h):
                    candidates[piece.coeffs] = piece
        reports = []
        for key in sorted(candidates,
                          key=lambda cs: (len(cs), tuple(reversed(cs)))):
            rep = classify_place(fam, candidates[key])
            if rep.exponent >= 1:
                reports.append(rep)
        inf = classify_place(fam, INFINITY)
        if inf.exponent >= 1:
            reports.append(inf)
        fam._bad = reports
    return list(fam._bad)


def conductor_degree(fam: TwistFamily) -> int:
    """Sum over places of conductor exponent times place degree."""
    return sum(rep.exponent * rep.degree for rep in bad_set(fam))


def base_bad_places(fam: TwistFamily) -> list[PlaceReport]:
    """Bad places of the untwisted base curve (the set S, plus infinity)."""
    if fam._base_bad is None:
        fam._base_bad = bad_set(fam.untwisted())
    return list(fam._base_bad)


# =============================================================================
# Fiber a-values
# =============================================================================

def _check_extension(fam: TwistFamily, field: FiniteField):
    if field.p != fam.field.p or field.n % fam.field.n != 0:
        raise InvalidInput("constant field does not extend the family field")


def _count_a_good(field: FiniteField, cubic: Poly, gval: int,
                  direct: bool) -> int:
    """Trace of Frobenius on a good fiber g y^2 = cubic(x) over the field.

    Default path: a = -sum_x chi(g * cubic(x)).  Direct path: honest point
    enumeration using a histogram of g*y^2 values (no character shortcut).
    """
    q = field.q
    if field._tables_built:
        X = np.arange(q, dtype=np.int64)
        vals = cubic.veval(X)
        if direct:
            ysq = field.vmul(np.full(q, gval, dtype=np.int64),
                             field.vmul(X, X))
            counts = np.bincount(ysq, minlength=q)
            return int(q - counts[vals].sum())
        gv = field.vmul(np.full(q, gval, dtype=np.int64), vals)
        return int(-field.vchi(gv).sum(dtype=np.int64))
    total = 0
    for x in field.elements():
        total += quadratic_character(field, field.mul(gval, cubic.evaluate(x)))
    return -total


def fiber_a_value(fam: TwistFamily, field: FiniteField, t0,
                  direct: bool = False) -> int:
    """Frobenius trace of the fiber above t0 in P^1(field).

    Good fiber: q + 1 - #points, equal to -sum_x chi(g(t0) cubic(x));
    multiplicative: +1 if split over the field, -1 otherwise; additive: 0.
    Fibers where the naive twisted model is non-minimal are re-minimalized
    first, so roots of g shared with the base discriminant are handled.
    """
    _check_extension(fam, field)
    if t0 is INFINITY:
        return _fiber_a_infinity(fam, field, direct)
    t0 = int(t0)
    if not 0 <= t0 < field.q:
        raise InvalidInput("fiber parameter outside the field")
    a, b, c, g, c4, c6, disc = fam.lifted(field)
    gval = g.evaluate(t0)
    dval = disc.evaluate(t0)
    if gval != 0 and dval != 0:
        cubic = Poly(field, (c.evaluate(t0), b.evaluate(t0), a.evaluate(t0), 1))
        return _count_a_good(field, cubic, gval, direct)
    mg = _root_multiplicity(g, t0)
    v4 = 2 * mg + _root_multiplicity(c4, t0)
    vD = 6 * mg + _root_multiplicity(disc, t0)
    r = min(v4 // 4, vD // 12)
    v4m, vDm = v4 - 4 * r, vD - 12 * r
    if vDm > 0 and v4m > 0:
        return 0
    g2c4 = g * g * c4
    g3c6 = g * g * g * c6
    c4v = _exact_quotient_value(g2c4, t0, 4 * r)
    c6v = _exact_quotient_value(g3c6, t0, 6 * r)
    P = field.neg(field.mul(27 % field.p, c4v))
    Q = field.neg(field.mul(54 % field.p, c6v))
    if vDm == 0:
        cubic = Poly(field, (Q, P, 0, 1))
        return _count_a_good(field, cubic, 1, direct)
    return 1 if _mult_split_sign(P, Q, field) == SPLIT_MULT else -1


def _fiber_a_infinity(fam: TwistFamily, field: FiniteField,
                      direct: bool = False) -> int:
    v4m, vDm, c4v, c6v = _infinity_data(fam)
    if vDm > 0 and v4m > 0:
        return 0
    c4f = embed(c4v, fam.field, field)
    c6f = embed(c6v, fam.field, field)
    P = field.neg(field.mul(27 % field.p, c4f))
    Q = field.neg(field.mul(54 % field.p, c6f))
    if vDm == 0:
        cubic = Poly(field, (Q, P, 0, 1))
        return _count_a_good(field, cubic, 1, direct)
    return 1 if _mult_split_sign(P, Q, field) == SPLIT_MULT else -1


# -- whole-line fiber arrays ---------------------------------------------------

_BASE_ARRAY_CACHE: dict[tuple, np.ndarray] = {}

_GRID_BYTES = 1 << 26  # soft cap on temporary grid memory


def base_fiber_array(fam: TwistFamily, field: FiniteField,
                     jobs: int = 1) -> np.ndarray:
    """a-values of the *untwisted* base curve over every t0 in the field.

    Bad base fibers hold their local trace (+-1 multiplicative, 0 additive).
    The result is cached per (base model, field) and shared by every twist
    in a scan.
    """
    _check_extension(fam, field)
    key = fam.base_fingerprint() + (field.p, field.n)
    cached = _BASE_ARRAY_CACHE.get(key)
    if cached is not None:
        return cached
    field._need_tables()
    base = fam.untwisted()
    a, b, c, g, c4, c6, disc = base.lifted(field)
    q = field.q
    T = np.arange(q, dtype=np.int64)
    A, B, C = a.veval(T), b.veval(T), c.veval(T)
    X = np.arange(q, dtype=np.int64)
    X2 = field.vmul(X, X)
    X3 = field.vmul(X2, X)
    out = np.zeros(q, dtype=np.int64)
    chunk = max(1, min(q, _GRID_BYTES // (q * max(field.n, 4))))
    chi = field.chi

    def run_chunk(lo):
        hi = min(q, lo + chunk)
        V = field.vadd(X3[None, :], field.vmul(A[lo:hi, None], X2[None, :]))
        V = field.vadd(V, field.vmul(B[lo:hi, None], X[None, :]))
        V = field.vadd(V, np.broadcast_to(C[lo:hi, None], V.shape))
        return -chi[V].sum(axis=1, dtype=np.int64)

    starts = list(range(0, q, chunk))
    if jobs > 1 and len(starts) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            pieces = list(ex.map(run_chunk, starts))
    else:
        pieces = [run_chunk(lo) for lo in starts]
    for lo, piece in zip(starts, pieces):
        out[lo:lo + len(piece)] = piece
    # overwrite bad base fibers with their local traces
    dvals = disc.veval(T)
    for t0 in np.nonzero(dvals == 0)[0]:
        out[t0] = fiber_a_value(base, field, int(t0))
    _BASE_ARRAY_CACHE[key] = out
    return out


# =============================================================================
# Standard models and serialization
# =============================================================================

def legendre_base(field: FiniteField) -> tuple[Poly, Poly, Poly]:
    """Coefficients of y^2 = x(x+1)(x-t) = x^3 + (1-t)x^2 - t x."""
    a = Poly(field, (1, field.neg(1)))
    b = Poly(field, (0, field.neg(1)))
    c = Poly.zero(field)
    return a, b, c


def legendre_family(field: FiniteField, g: Poly | None = None) -> TwistFamily:
    a, b, c = legendre_base(field)
    if g is None:
        g = Poly(field, (1,), trusted=True)
    return build_twist_family(a, b, c, g)


def family_to_json(fam: TwistFamily) -> dict:
    if fam.field.n != 1:
        raise InvalidInput("family files use prime coefficient fields")
    return {
        "p": fam.field.p,
        "a": list(fam.a.coeffs),
        "b": list(fam.b.coeffs),
        "c": list(fam.c.coeffs),
        "g": list(fam.g.coeffs),
    }


def family_from_json(doc: dict) -> TwistFamily:
    try:
        p = int(doc["p"])
        coeffs = {k: [int(v) for v in doc[k]] for k in ("a", "b", "c", "g")}
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed family document: {exc}") from exc
    F = make_field(p, 1)
    polys = {k: Poly.from_ints(F, v) for k, v in coeffs.items()}
    return build_twist_family(polys["a"], polys["b"], polys["c"], polys["g"])
