"""Finite fields F_{p^n} for odd p >= 5 and univariate polynomials over them.

Field elements are represented as integers in [0, p^n).  The integer
e = v_0 + v_1*p + ... + v_{n-1}*p^(n-1) encodes the coefficient vector
(v_0, ..., v_{n-1}) of the residue class v_0 + v_1*x + ... modulo the
field's defining polynomial.  Elements of the prime field therefore have
the same encoding in every extension, and 0 and 1 are always the indices
0 and 1.

The defining modulus is the lexicographically smallest monic irreducible
of the requested degree (smallest base-p integer formed by the non-leading
coefficients), so field construction is deterministic and results are
reproducible bit for bit.

For q = p^n up to 2^22 the field carries discrete-log tables (built from a
deterministically chosen multiplicative generator) plus digit tables, and
exposes vectorized numpy arithmetic used by the point-counting kernels.
Above that size all arithmetic falls back to scalar polynomial operations
and the quadratic character is computed by exponentiation.

Polynomials are immutable coefficient tuples, lowest degree first, with no
trailing zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

TABLE_LIMIT = 1 << 22

# Seed for the randomized (but reproducible) equal-degree splitting maps.
_FACTOR_SEED = 271828


class InvalidInput(ValueError):
    """Caller violated a precondition (bad prime, wrong field, ...)."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _prime_factors(m: int) -> list[int]:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


class FiniteField:
    """F_{p^n} with a fixed monic irreducible modulus of degree n.

    Do not instantiate directly; use :func:`make_field` so that fields are
    shared and tables are built once.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus  # length n+1, monic, coefficients in [0, p)
        # x^(n+k) mod modulus, as coefficient tuples, for k = 0..n-2
        self._red = self._reduction_rows()
        self._tables_built = False
        self.exp = None  # exp[k] = index of g^k, doubled to avoid mod
        self.log = None  # log[e] for e != 0; log[0] = 0 (mask separately)
        self.chi = None  # quadratic character table, int8 in {-1,0,1}
        self.dig = None  # (q, n) uint8 digit matrix
        self.negt = None  # negation table
        self.invt = None  # inverse table (invt[0] = 0, unused)
        self.generator = None
        if self.q <= TABLE_LIMIT:
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _reduction_rows(self):
        p, n = self.p, self.n
        head = tuple((-c) % p for c in self.modulus[:n])  # x^n mod modulus
        rows = [head]
        for _ in range(n - 2):
            prev = rows[-1]
            # multiply by x, reduce the overflow coefficient
            top = prev[-1]
            shifted = [0] + list(prev[:-1])
            if top:
                for i in range(n):
                    shifted[i] = (shifted[i] + top * head[i]) % p
            rows.append(tuple(shifted))
        return rows

    def decode(self, e: int) -> tuple[int, ...]:
        """Coefficient vector (v_0, ..., v_{n-1}) of an element index."""
        p = self.p
        v = []
        for _ in range(self.n):
            e, r = divmod(e, p)
            v.append(r)
        return tuple(v)

    def encode(self, vec) -> int:
        e = 0
        for c in reversed(list(vec)):
            e = e * self.p + c % self.p
        return e

    # -- scalar arithmetic on element indices --------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        va, vb = self.decode(a), self.decode(b)
        return self.encode((x + y) % self.p for x, y in zip(va, vb))

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.decode(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.n == 1:
            return (a * b) % self.p
        if self._tables_built:
            return int(self.exp[self.log[a] + self.log[b]])
        return self._mul_generic(a, b)

    def _mul_generic(self, a: int, b: int) -> int:
        p, n = self.p, self.n
        va, vb = self.decode(a), self.decode(b)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        out = [c % p for c in prod[:n]]
        for k in range(n, 2 * n - 1):
            c = prod[k] % p
            if c:
                row = self._red[k - n]
                for i in range(n):
                    out[i] = (out[i] + c * row[i]) % p
        return self.encode(out)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero field element")
        if self._tables_built:
            return int(self.invt[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frobenius(self, a: int, k: int = 1) -> int:
        """a -> a^(p^k)."""
        return self.pow(a, pow(self.p, k % self.n if self.n > 1 else 1))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise InvalidInput("zero has no multiplicative order")
        m = self.q - 1
        for r in _prime_factors(m):
            while m % r == 0 and self.pow(a, m // r) == 1:
                m //= r
        return m

    # -- tables ---------------------------------------------------------------

    def _find_generator(self) -> int:
        m = self.q - 1
        facs = _prime_factors(m)
        for cand in range(2, self.q):
            if all(self.pow(cand, m // r) != 1 for r in facs):
                return cand
        raise RuntimeError("no multiplicative generator found")

    def _mul_matrix(self, e: int) -> np.ndarray:
        """n x n matrix of multiplication by element e, acting on digit rows."""
        n = self.n
        M = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            # e * x^i
            col = self.decode(self._mul_generic(e, self.encode([0] * i + [1])))
            M[i, :] = col
        return M

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        g = self._find_generator()
        self.generator = g
        # digit rows of g^0, g^1, ... by batched doubling
        rows = np.zeros((q - 1, n), dtype=np.int64)
        rows[0, 0] = 1
        have = 1
        while have < q - 1:
            step = self.pow(g, have)
            M = self._mul_matrix(step)
            take = min(have, q - 1 - have)
            rows[have:have + take] = (rows[:take] @ M) % p
            have += take
        pp = (p ** np.arange(n)).astype(np.int64)
        expv = (rows @ pp).astype(np.int64)
        self.exp = np.concatenate([expv, expv]).astype(np.int32)
        log = np.zeros(q, dtype=np.int64)
        log[expv] = np.arange(q - 1)
        self.log = log.astype(np.int64)
        chi = np.zeros(q, dtype=np.int8)
        chi[expv] = 1 - 2 * (np.arange(q - 1, dtype=np.int64) & 1)
        self.chi = chi
        digits = np.zeros((q, n), dtype=np.uint8)
        idx = np.arange(q, dtype=np.int64)
        for i in range(n):
            digits[:, i] = (idx // pp[i]) % p
        self.dig = digits
        self.negt = (((p - digits.astype(np.int64)) % p) @ pp).astype(np.int32)
        inv = np.zeros(q, dtype=np.int64)
        inv[expv] = expv[(-np.arange(q - 1)) % (q - 1)]
        self.invt = inv.astype(np.int32)
        self._tables_built = True

    # -- vectorized arithmetic on numpy index arrays --------------------------

    def _need_tables(self):
        if not self._tables_built:
            raise InvalidInput(
                f"field F_{self.p}^{self.n} exceeds the table limit; "
                "vectorized kernels are unavailable")

    def vadd(self, A, B):
        self._need_tables()
        if self.n == 1:
            return (A + B) % self.p
        D = self.dig[A] + self.dig[B]
        D %= self.p
        out = D[..., self.n - 1].astype(np.int64)
        for i in range(self.n - 2, -1, -1):
            out *= self.p
            out += D[..., i]
        return out

    def vneg(self, A):
        self._need_tables()
        return self.negt[A]

    def vsub(self, A, B):
        return self.vadd(A, self.vneg(B))

    def vmul(self, A, B):
        self._need_tables()
        out = self.exp[self.log[A] + self.log[B]].astype(np.int64)
        zero = (A == 0) | (B == 0)
        return np.where(zero, 0, out)

    def vchi(self, A):
        self._need_tables()
        return self.chi[A]

    def elements(self) -> range:
        return range(self.q)

    # -- misc ------------------------------------------------------------------

    def __repr__(self):
        return f"F_{self.p}" if self.n == 1 else f"F_{self.p}^{self.n}"

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.n) == (other.p, other.n))

    def __hash__(self):
        return hash((self.p, self.n))


@lru_cache(maxsize=None)
def make_field(p: int, n: int) -> FiniteField:
    """Build F_{p^n} with the deterministically chosen smallest modulus.

    Rejects p < 5 (characteristic 2 and 3 are out of scope) and composite p.
    """
    if not is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    if p < 5:
        raise InvalidInput("characteristic must be at least 5")
    if n < 1:
        raise InvalidInput("extension degree must be >= 1")
    if n == 1:
        return FiniteField(p, 1, (0, 1))
    base = make_field(p, 1)
    for k in range(p**n):
        tail = []
        e = k
        for _ in range(n):
            e, r = divmod(e, p)
            tail.append(r)
        mod = Poly(base, tuple(tail) + (1,), trusted=True)
        if is_irreducible(mod):
            return FiniteField(p, n, tuple(tail) + (1,))
    raise RuntimeError("no irreducible modulus found")  # unreachable


def quadratic_character(field: FiniteField, x: int) -> int:
    """chi(x) in {-1, 0, +1}: 0 iff x = 0, +1 iff x is a nonzero square."""
    if x == 0:
        return 0
    if field._tables_built:
        return int(field.chi[x])
    s = field.pow(x, (field.q - 1) // 2)
    return 1 if s == 1 else -1


# =============================================================================
# Polynomials
# =============================================================================

class Poly:
    """Univariate polynomial over a FiniteField.

    Coefficients are element indices, lowest degree first, normalized so the
    leading coefficient is nonzero; the zero polynomial has no coefficients.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs, trusted: bool = False):
        self.field = field
        if trusted:
            self.coeffs = tuple(coeffs)
            return
        c = [int(x) for x in coeffs]
        if any(x < 0 or x >= field.q for x in c):
            raise InvalidInput("coefficient index out of range")
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, (), trusted=True)

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,)) if c else cls(field, (), trusted=True)

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1), trusted=True)

    @classmethod
    def from_ints(cls, field, ints):
        """Build from integer coefficients, reduced into the prime field."""
        return cls(field, [i % field.p for i in ints])

    # -- basic structure ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> int:
        if not self.coeffs:
            raise InvalidInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                cc = "" if c == 1 else f"{c}*"
                terms.append(f"{cc}t" if i == 1 else f"{cc}t^{i}")
        return " + ".join(terms)

    # -- ring operations ---------------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise InvalidInput("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, tuple(F.neg(c) for c in self.coeffs), trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, c: int):
        F = self.field
        if c == 0:
            return Poly.zero(F)
        return Poly(F, tuple(F.mul(c, x) for x in self.coeffs), trusted=True)

    def __divmod__(self, other):
        self._check(other)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree
        q = [0] * max(0, len(r) - d)
        inv_lc = F.inv(other.lc)
        for k in range(len(r) - d - 1, -1, -1):
            c = F.mul(r[k + d], inv_lc)
            if c == 0:
                continue
            q[k] = c
            for i, oc in enumerate(other.coeffs):
                r[k + i] = F.sub(r[k + i], F.mul(c, oc))
        return Poly(F, q), Poly(F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(F.mul(i % F.p, self.coeffs[i]))
        return Poly(F, out)

    def powmod(self, e: int, mod: "Poly") -> "Poly":
        r = Poly(self.field, (1,), trusted=True)
        b = self % mod
        while e:
            if e & 1:
                r = (r * b) % mod
            b = (b * b) % mod
            e >>= 1
        return r

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, x: int, field: FiniteField | None = None) -> int:
        """Evaluate at x, optionally in an extension of the coefficient field."""
        F = field or self.field
        coeffs = self.coeffs if F == self.field else lift(self, F).coeffs
        acc = 0
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def veval(self, X: np.ndarray, field: FiniteField | None = None):
        F = field or self.field
        coeffs = self.coeffs if F == self.field else lift(self, F).coeffs
        if not coeffs:
            return np.zeros_like(X)
        acc = np.full_like(X, coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = F.vmul(acc, X)
            if c:
                acc = F.vadd(acc, np.full_like(X, c))
        return acc

    def shift_arg(self, c: int) -> "Poly":
        """Compose with t + c: returns f(t + c)."""
        F = self.field
        out = Poly.zero(F)
        tc = Poly(F, (c, 1))
        for coef in reversed(self.coeffs):
            out = out * tc + Poly.constant(F, coef)
        return out


# -- gcd and structure ---------------------------------------------------------

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor."""
    if f.field != g.field:
        raise InvalidInput("polynomials over different fields")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def is_squarefree(f: Poly) -> bool:
    """True iff f has deg(f) distinct zeros in the algebraic closure."""
    if f.is_zero():
        raise InvalidInput("zero polynomial")
    return poly_gcd(f, f.derivative()).degree == 0


def distinct_root_count(f: Poly) -> int:
    """Number of distinct roots of f in the algebraic closure.

    This is deg(f / gcd(f, f')) when f' != 0.  When f' = 0 the polynomial is
    a p-th power g(t^p) = h(t)^p and the count recurses on h.
    """
    if f.is_zero():
        raise InvalidInput("zero polynomial")
    if f.degree == 0:
        return 0
    d = f.derivative()
    if d.is_zero():
        return distinct_root_count(_pth_root(f))
    return (f // poly_gcd(f, d)).degree


def _pth_root(f: Poly) -> Poly:
    """For f = g(t^p), return the polynomial h with h^p = f."""
    F = f.field
    p = F.p
    out = []
    for i in range(0, f.degree + 1, p):
        c = f.coeffs[i]
        # c^(q/p) is the p-th root of c in F_q
        out.append(F.pow(c, F.q // p))
    return Poly(F, out)


def lift(f: Poly, field: FiniteField) -> Poly:
    """Reinterpret f over an extension of its coefficient field."""
    if f.field == field:
        return f
    src = f.field
    if field.p != src.p or field.n % src.n != 0:
        raise InvalidInput("target is not an extension of the coefficient field")
    if src.n == 1:
        return Poly(field, f.coeffs, trusted=True)
    return Poly(field, tuple(embed(c, src, field) for c in f.coeffs))


# -- embeddings ---------------------------------------------------------------

_EMBED_CACHE: dict[tuple[int, int, int, int], list[int]] = {}


def embed(x: int, src: FiniteField, dst: FiniteField) -> int:
    """Ring embedding F_{p^m} -> F_{p^n} for m | n.

    The image of the source generator x is the deterministically smallest
    root of the source modulus in the target field; the embedding is a ring
    homomorphism, injective, and commutes with Frobenius.
    """
    if src == dst:
        return x
    if dst.p != src.p or dst.n % src.n != 0:
        raise InvalidInput(f"{src} does not embed in {dst}")
    key = (src.p, src.n, dst.p, dst.n)
    powers = _EMBED_CACHE.get(key)
    if powers is None:
        base = make_field(src.p, 1)
        mod = Poly(base, src.modulus)  # prime-field coefficients
        roots = roots_in_field(mod, dst)
        theta = roots[0]
        powers = [1]
        for _ in range(src.n - 1):
            powers.append(dst.mul(powers[-1], theta))
        _EMBED_CACHE[key] = powers
    digits = src.decode(x)
    acc = 0
    for d, t in zip(digits, powers):
        if d:
            acc = dst.add(acc, dst.mul(d, t))
    return acc


# -- irreducibility, factorization, roots ---------------------------------------

def is_irreducible(f: Poly) -> bool:
    """Rabin-style test: no irreducible factor of degree <= deg(f)/2."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    fm = f.monic()
    x = Poly.x(F)
    h = x
    for _ in range(f.degree // 2):
        h = h.powmod(F.q, fm)
        if poly_gcd(h - x, fm).degree > 0:
            return False
    return True


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Return [(g_i, m_i)] with f = lc * prod g_i^{m_i}, g_i squarefree monic."""
    F = f.field
    if f.is_zero():
        raise InvalidInput("zero polynomial")
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.degree == 0:
        return out
    d = f.derivative()
    if d.is_zero():
        for g, m in squarefree_decomposition(_pth_root(f)):
            out.append((g, m * F.p))
        return out
    c = poly_gcd(f, d)
    w = f // c
    m = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, m))
        w = y
        c = c // y
        m += 1
    if c.degree > 0:
        for g, mm in squarefree_decomposition(c):
            out.append((g, mm * F.p))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """Split squarefree monic f into products of same-degree irreducibles."""
    F = f.field
    out = []
    x = Poly.x(F)
    h = x
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.powmod(F.q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus: factor monic squarefree f, all factors of degree d."""
    F = f.field
    if f.degree == d:
        return [f]
    e = (F.q**d - 1) // 2
    while True:
        r = Poly(F, [rng.randrange(F.q) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        g = poly_gcd(r, f)
        if 0 < g.degree < f.degree:
            pass  # lucky split
        else:
            h = r.powmod(e, f) - Poly(F, (1,), trusted=True)
            g = poly_gcd(h, f)
            if not (0 < g.degree < f.degree):
                continue
        return (_equal_degree_split(g, d, rng)
                + _equal_degree_split(f // g, d, rng))


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Full factorization into monic irreducibles with multiplicities.

    Deterministic: the equal-degree stage draws its splitting polynomials
    from a fixed-seed generator, and factors are sorted by (degree, coeffs).
    """
    rng = random.Random(_FACTOR_SEED)
    out: list[tuple[Poly, int]] = []
    for g, m in squarefree_decomposition(f):
        for prod, d in _distinct_degree(g):
            for irr in _equal_degree_split(prod, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: (t[0].degree, tuple(reversed(t[0].coeffs))))
    return out


def roots_in_field(f: Poly, field: FiniteField) -> list[int]:
    """All roots of f in the given field, deduplicated, in index order."""
    if f.is_zero():
        raise InvalidInput("zero polynomial")
    g = lift(f, field)
    if g.degree < 1:
        return []
    if field._tables_built:
        vals = g.veval(np.arange(field.q, dtype=np.int64))
        return [int(t) for t in np.nonzero(vals == 0)[0]]
    # algebraic path: gcd with x^q - x, then split off linear factors
    g = g.monic()
    x = Poly.x(field)
    xq = x.powmod(field.q, g)
    lin = poly_gcd(xq - x, g)
    roots = []
    rng = random.Random(_FACTOR_SEED)
    stack = [lin]
    while stack:
        h = stack.pop()
        if h.degree == 0:
            continue
        if h.degree == 1:
            hm = h.monic()
            roots.append(field.neg(hm.coeffs[0]))
            continue
        for piece in _equal_degree_split(h.monic(), 1, rng):
            stack.append(piece)
    return sorted(roots)


# -- critical values -------------------------------------------------------------

def _hessenberg_charpoly(M: list[list[int]], F: FiniteField) -> Poly:
    """Characteristic polynomial det(yI - M), monic, via Hessenberg reduction."""
    n = len(M)
    H = [row[:] for row in M]
    for m in range(1, n - 1):
        # find pivot below the subdiagonal in column m-1
        piv = -1
        for i in range(m, n):
            if H[i][m - 1] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != m:
            H[piv], H[m] = H[m], H[piv]
            for row in H:
                row[piv], row[m] = row[m], row[piv]
        t = H[m][m - 1]
        for i in range(m + 1, n):
            if H[i][m - 1]:
                u = F.div(H[i][m - 1], t)
                for j in range(n):
                    H[i][j] = F.sub(H[i][j], F.mul(u, H[m][j]))
                for j in range(n):
                    H[j][m] = F.add(H[j][m], F.mul(u, H[j][i]))
    # p_m(y) = (y - H[m][m]) p_{m-1} - sum_i H[i][m] (prod subdiag) p_{i-1}
    polys = [Poly(F, (1,), trusted=True)]
    for m in range(n):
        lead = Poly(F, (F.neg(H[m][m]), 1)) * polys[m]
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = F.mul(prod, H[i + 1][i])
            c = F.mul(H[i][m], prod)
            if c:
                lead = lead - polys[i].scale(c)
        polys.append(lead)
    return polys[n]


def critical_value_poly(f: Poly) -> Poly:
    """Monic polynomial whose roots (with multiplicity) are the values of f
    at the zeros of f'.

    Computed as the characteristic polynomial of multiplication by f on
    F[x]/(f'); f has pairwise distinct critical values iff the result is
    squarefree.
    """
    if f.degree < 1:
        raise InvalidInput("constant polynomial has no critical values")
    d = f.derivative()
    if d.is_zero():
        raise InvalidInput("inseparable input: derivative is zero")
    F = f.field
    dm = d.monic()
    m = dm.degree
    if m == 0:
        return Poly(F, (1,), trusted=True)
    red = f % dm
    M = [[0] * m for _ in range(m)]
    col = red
    x = Poly.x(F)
    for j in range(m):
        for i in range(min(col.degree + 1, m)):
            M[i][j] = col.coeffs[i]
        col = (col * x) % dm
    return _hessenberg_charpoly(M, F)
