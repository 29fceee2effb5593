"""Exact L-polynomials of twist families from fiberwise trace sums.

The m-th trace sum b_m adds the Frobenius traces of every fiber over
P^1(F_{Q^m}); with a_t = q + 1 - #E_t these satisfy

    L(T) = exp( sum_m b_m T^m / m ),

so the coefficients follow from the Newton recurrence k c_k = sum b_j c_{k-j}
as exact integers.  The degree N comes from the conductor (never from trace
fitting), the upper half of the coefficients from the functional equation
c_{N-j} = eps Q^{N-2j} c_j, and every result is validated against the exact
functional equation and numerical purity of its inverse roots (|gamma| = Q).

The sign convention above is pinned down by those validations: the b_m are
the negated power sums of the inverse roots of L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fibration import (
    GOOD,
    INFINITY,
    SPLIT_MULT,
    TwistFamily,
    _check_extension,
    base_fiber_array,
    classify_place,
    conductor_degree,
    fiber_a_value,
    residue_field_and_root,
)
from .galois import FiniteField, InvalidInput, Poly, is_irreducible, make_field


class ValidationError(Exception):
    """A mathematical invariant failed; a finding, not a usage error."""


class CountingError(ValidationError):
    """Trace data is inconsistent (non-integral Newton coefficient)."""


@dataclass(frozen=True)
class TraceVector:
    """Trace sums b_1..b_M over F_{Q^m}."""

    Q: int
    values: tuple[int, ...]

    def __post_init__(self):
        for m, b in enumerate(self.values, start=1):
            qm = self.Q**m
            bound = (qm + 1) * (math.isqrt(4 * qm) + 1)
            if abs(b) > bound:
                raise ValidationError(
                    f"trace b_{m} = {b} exceeds the Hasse-derived bound {bound}")


@dataclass(frozen=True)
class LPolynomial:
    """L(E/F_Q(t), T) with exact integer coefficients c_0..c_N."""

    Q: int
    N: int
    eps: int
    coeffs: tuple[int, ...]
    traces_used: tuple[int, ...] = ()
    completed_by_fe: bool = False

    def validate(self, tol: float = 1e-6):
        if len(self.coeffs) != self.N + 1:
            raise ValidationError("coefficient count does not match degree")
        if self.coeffs[0] != 1:
            raise ValidationError("c_0 must be 1")
        if self.N > 0 and self.eps not in (1, -1):
            raise ValidationError("sign must be +-1")
        for j in range(self.N + 1):
            if self.coeffs[self.N - j] != self.eps * self.Q**(self.N - 2 * j) * self.coeffs[j]:
                raise ValidationError(
                    f"functional equation fails at coefficient pair ({j}, {self.N - j})")
        if not weil_check(self, tol):
            raise ValidationError("inverse roots violate |gamma| = Q")
        return self

    def to_json(self) -> dict:
        return {
            "Q": self.Q,
            "N": self.N,
            "eps": self.eps,
            "coeffs": [str(c) for c in self.coeffs],
            "traces_used": list(self.traces_used),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LPolynomial":
        try:
            L = cls(Q=int(doc["Q"]), N=int(doc["N"]), eps=int(doc["eps"]),
                    coeffs=tuple(int(c) for c in doc["coeffs"]),
                    traces_used=tuple(int(b) for b in doc.get("traces_used", ())),
                    completed_by_fe=True)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed L-polynomial document: {exc}") from exc
        return L.validate()


@dataclass(frozen=True)
class NeedsMore:
    """Sign still undetermined; another trace b_{next_m} is required."""

    next_m: int


# =============================================================================
# Trace sums
# =============================================================================

def trace_sum(fam: TwistFamily, field: FiniteField, jobs: int = 1,
              direct: bool = False) -> int:
    """Exact sum of fiber traces over all points of P^1(field).

    The default kernel reuses the cached base-curve fiber array and the
    factorization chi(g(t0) u) = chi(g(t0)) chi(u); fibers where that
    shortcut is invalid (a zero of g at which the twisted model is
    non-minimal) are classified individually.  With direct=True every fiber
    is counted by plain point enumeration instead.
    """
    _check_extension(fam, field)
    if direct:
        total = sum(fiber_a_value(fam, field, t0, direct=True)
                    for t0 in field.elements())
        return total + fiber_a_value(fam, field, INFINITY, direct=True)
    field._need_tables()
    a, b, c, g, c4, c6, disc = fam.lifted(field)
    aE = base_fiber_array(fam, field, jobs=jobs)
    T = np.arange(field.q, dtype=np.int64)
    gvals = g.veval(T)
    contrib = field.vchi(gvals).astype(np.int64) * aE
    total = int(contrib.sum())
    from .fibration import _root_multiplicity
    for t0 in np.nonzero(gvals == 0)[0]:
        t0 = int(t0)
        if (_root_multiplicity(c4, t0) >= 2
                and _root_multiplicity(disc, t0) >= 6):
            # the chi(g) shortcut contributed 0 here; use the true value
            total += fiber_a_value(fam, field, t0)
    return total + fiber_a_value(fam, field, INFINITY)


# =============================================================================
# Newton identities and functional-equation completion
# =============================================================================

def newton_coefficients(traces, upto: int) -> list[int]:
    """c_0..c_upto from b_1..b_upto via k c_k = sum_{j<=k} b_j c_{k-j}."""
    values = traces.values if isinstance(traces, TraceVector) else tuple(traces)
    if len(values) < upto:
        raise InvalidInput(f"need {upto} traces, have {len(values)}")
    c = [1]
    for k in range(1, upto + 1):
        s = sum(values[j - 1] * c[k - j] for j in range(1, k + 1))
        q, r = divmod(s, k)
        if r:
            raise CountingError(
                f"Newton coefficient c_{k} is not integral (sum {s})")
        c.append(q)
    return c


def power_sums(coeffs, upto: int) -> list[int]:
    """Inverse Newton map: recover b_1..b_upto from polynomial coefficients."""
    cs = list(coeffs) + [0] * max(0, upto + 1 - len(coeffs))
    b = []
    for k in range(1, upto + 1):
        s = k * cs[k] - sum(b[j - 1] * cs[k - j] for j in range(1, k))
        b.append(s)
    return b


def complete_by_fe(partial, N: int, Q: int):
    """Determine the sign and the upper coefficients from the lower half.

    partial holds c_0..c_k with k >= ceil(N/2).  Returns (coeffs, eps) or a
    NeedsMore request when every determining coefficient pair vanishes.
    Inconsistent pairs raise ValidationError (wrong degree or wrong traces).
    """
    if N < 0:
        raise InvalidInput("negative degree")
    partial = tuple(partial)
    if not partial or partial[0] != 1:
        raise ValidationError("c_0 must be 1")
    if N == 0:
        if any(partial[1:]):
            raise ValidationError("nonzero trace data for a degree-0 L")
        return (1,), 1
    k = len(partial) - 1
    if k < -(-N // 2):
        raise InvalidInput("need coefficients through ceil(N/2)")
    if k > N:
        if any(partial[N + 1:]):
            raise ValidationError("nonzero coefficients beyond the degree")
        partial = partial[:N + 1]
        k = N
    eps = None
    for j in range(N // 2, max(0, N - k) - 1, -1):
        cj, cnj = partial[j], partial[N - j]
        if cj == 0 and cnj == 0:
            continue
        if cj == 0:
            raise ValidationError(
                f"coefficients ({j}, {N - j}) cannot satisfy the functional equation")
        scale = Q**(N - 2 * j)
        if cnj == cj * scale:
            e = 1
        elif cnj == -cj * scale:
            e = -1
        else:
            raise ValidationError(
                f"coefficient pair ({j}, {N - j}) violates the functional equation")
        if eps is None:
            eps = e
        elif eps != e:
            raise ValidationError("inconsistent functional-equation sign")
    if eps is None:
        return NeedsMore(k + 1)
    full = list(partial) + [0] * (N - k)
    for j in range(0, N - k):
        full[N - j] = eps * Q**(N - 2 * j) * partial[j]
    return tuple(full), eps


def l_polynomial(fam: TwistFamily, field: FiniteField, jobs: int = 1,
                 direct: bool = False) -> LPolynomial:
    """Full pipeline: traces -> Newton -> functional-equation completion.

    The degree is N = conductor_degree - 4; traces are computed for
    m = 1..ceil(N/2) and extended lazily while the sign is undetermined
    (at most up to m = N, where the pair (0, N) always decides).
    """
    _check_extension(fam, field)
    N = conductor_degree(fam) - 4
    if N < 0:
        raise ValidationError(
            f"conductor degree {N + 4} below 4: classification bug")
    Q = field.q
    if N == 0:
        return LPolynomial(Q, 0, 1, (1,)).validate()
    traces: list[int] = []
    m = -(-N // 2)
    while True:
        while len(traces) < m:
            mm = len(traces) + 1
            ext = make_field(field.p, field.n * mm)
            traces.append(trace_sum(fam, ext, jobs=jobs, direct=direct))
        tv = TraceVector(Q, tuple(traces))
        coeffs = newton_coefficients(tv, m)
        res = complete_by_fe(coeffs, N, Q)
        if isinstance(res, NeedsMore):
            m = res.next_m
            continue
        full, eps = res
        L = LPolynomial(Q, N, eps, full, traces_used=tuple(traces),
                        completed_by_fe=m < N)
        return L.validate()


# =============================================================================
# Checks and transforms
# =============================================================================

def weil_check(L: LPolynomial, tol: float = 1e-6) -> bool:
    """Numerically verify that every inverse root has |gamma| = Q."""
    if L.N == 0:
        return True
    if L.N > 64:
        raise InvalidInput("root finding beyond degree 64 is out of scope")
    unit = [c / float(L.Q) ** j for j, c in enumerate(L.coeffs)]
    gammas = np.roots(unit)  # roots of T^N P(1/T): the unitarized inverse roots
    return bool(np.max(np.abs(np.abs(gammas) - 1.0)) < tol)


def unitarize_mod_ell(L: LPolynomial, ell: int) -> tuple[int, ...]:
    """Coefficients of L(T/Q) mod ell, the reduced orthogonal charpoly."""
    from .galois import is_prime
    if ell == 2 or not is_prime(ell):
        raise InvalidInput("ell must be an odd prime")
    if L.Q % ell == 0:
        raise InvalidInput("ell must not divide the field size")
    qinv = pow(L.Q, -1, ell)
    return tuple(c * pow(qinv, j, ell) % ell for j, c in enumerate(L.coeffs))


# =============================================================================
# Independent Euler-product oracle
# =============================================================================

def _series_mul(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[:order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[:order + 1 - i]):
            out[i + j] += x * y
    return out


def _series_inv(a: list[int], order: int) -> list[int]:
    if a[0] != 1:
        raise InvalidInput("series inverse needs constant term 1")
    out = [1] + [0] * order
    for k in range(1, order + 1):
        out[k] = -sum(a[j] * out[k - j] for j in range(1, min(k, len(a) - 1) + 1))
    return out


def _monic_polys(field: FiniteField, degree: int):
    idx = [0] * degree
    while True:
        yield Poly(field, idx + [1])
        i = 0
        while i < degree:
            idx[i] += 1
            if idx[i] < field.q:
                break
            idx[i] = 0
            i += 1
        else:
            return


def euler_product_l(fam: TwistFamily, field: FiniteField,
                    max_places: int = 10**6) -> tuple[int, ...]:
    """Truncated Euler product over the places of P^1(field): the first
    N + 1 coefficients of prod_v det(1 - Frob_v T^{deg v})^{-1}.

    Enumerates every monic irreducible of degree <= N plus infinity, so it
    is a small-field verification oracle, independent of the trace sums and
    Newton identities.
    """
    famQ = fam.base_change(field)
    N = conductor_degree(famQ) - 4
    series = [1] + [0] * N
    if N == 0:
        return tuple(series)
    work = sum(field.q**e for e in range(1, N + 1))
    if work > max_places:
        raise InvalidInput(
            f"Euler oracle would scan {work} candidate places (> {max_places})")
    Q = field.q
    for e in range(1, N + 1):
        for v in _monic_polys(field, e):
            if not is_irreducible(v):
                continue
            rep = classify_place(famQ, v)
            if rep.exponent == 0:
                kv, theta = residue_field_and_root(famQ, v)
                av = fiber_a_value(famQ, kv, theta)
                local = [1, -av, Q**e]
            elif rep.reduction == GOOD:  # pragma: no cover - defensive
                raise ValidationError("good place with nonzero exponent")
            elif rep.exponent == 1:
                av = 1 if rep.reduction == SPLIT_MULT else -1
                local = [1, -av]
            else:
                local = [1]
            expanded = [0] * (N + 1)
            for j, cval in enumerate(local):
                if j * e <= N:
                    expanded[j * e] = cval
            series = _series_mul(series, _series_inv(expanded, N), N)
    rep = classify_place(famQ, INFINITY)
    if rep.exponent == 0:
        av = fiber_a_value(famQ, field, INFINITY)
        local = [1, -av, Q]
    elif rep.exponent == 1:
        local = [1, -(1 if rep.reduction == SPLIT_MULT else -1)]
    else:
        local = [1]
    series = _series_mul(series, _series_inv(local + [0] * (N - len(local) + 1), N), N)
    return tuple(series)


# =============================================================================
# Degree probing diagnostic
# =============================================================================

def probe_degree(fam: TwistFamily, field: FiniteField, max_traces: int,
                 jobs: int = 1) -> dict:
    """Fit candidate degrees by trace extension and FE consistency.

    Diagnostic only; the production pipeline always takes the degree from
    the conductor.  Returns the conductor-derived degree next to every
    N <= max_traces consistent with the computed traces.
    """
    _check_extension(fam, field)
    traces = []
    for m in range(1, max_traces + 1):
        ext = make_field(field.p, field.n * m)
        traces.append(trace_sum(fam, ext, jobs=jobs))
    coeffs = newton_coefficients(TraceVector(field.q, tuple(traces)), max_traces)
    candidates = []
    for N in range(0, max_traces + 1):
        if any(coeffs[j] for j in range(N + 1, max_traces + 1)):
            continue
        if N > 0 and coeffs[N] == 0:
            continue
        try:
            res = complete_by_fe(tuple(coeffs[:N + 1]), N, field.q)
        except ValidationError:
            continue
        if isinstance(res, NeedsMore):
            continue
        full, eps = res
        L = LPolynomial(field.q, N, eps, full, traces_used=tuple(traces))
        try:
            L.validate()
        except ValidationError:
            continue
        candidates.append({"N": N, "eps": eps})
    return {
        "Q": field.q,
        "traces": traces,
        "conductor_degree_minus_4": conductor_degree(fam) - 4,
        "consistent_degrees": candidates,
    }
