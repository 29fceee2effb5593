import random

import numpy as np
import pytest

from twistscan.galois import (
    InvalidInput,
    Poly,
    critical_value_poly,
    distinct_root_count,
    embed,
    factor,
    is_irreducible,
    is_squarefree,
    lift,
    make_field,
    poly_gcd,
    quadratic_character,
    roots_in_field,
    squarefree_decomposition,
)


def P(field, *ints):
    return Poly.from_ints(field, ints)


class TestMakeField:
    def test_prime_field(self):
        F = make_field(5, 1)
        assert F.q == 5

    def test_extension_order(self):
        F = make_field(5, 2)
        assert F.q == 25
        # multiplicative group has order 24
        assert F.element_order(F.generator) == 24

    def test_frobenius_cycle(self):
        F = make_field(5, 3)
        for x in F.elements():
            y = x
            for _ in range(3):
                y = F.pow(y, 5)
            assert y == x

    def test_rejects_small_characteristic(self):
        for p in (2, 3):
            with pytest.raises(InvalidInput):
                make_field(p, 1)

    def test_rejects_composite(self):
        with pytest.raises(InvalidInput):
            make_field(15, 1)

    def test_modulus_is_irreducible_and_smallest(self):
        F = make_field(5, 2)
        assert F.modulus == (2, 0, 1)  # x^2 + 2
        F3 = make_field(5, 3)
        assert F3.modulus == (1, 1, 0, 1)  # x^3 + x + 1

    def test_field_axioms_sampled(self):
        F = make_field(7, 2)
        rng = random.Random(1)
        for _ in range(200):
            a, b, c = (rng.randrange(F.q) for _ in range(3))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(a, b) == F.mul(b, a)
        for a in range(1, F.q):
            assert F.mul(a, F.inv(a)) == 1


class TestQuadraticCharacter:
    def test_zero(self):
        F = make_field(5, 1)
        assert quadratic_character(F, 0) == 0

    def test_prime_field_values(self):
        F = make_field(5, 1)
        # squares of F_5 are {0, 1, 4}
        assert quadratic_character(F, 4) == 1
        assert quadratic_character(F, 2) == -1

    @pytest.mark.parametrize("p,n", [(5, 1), (5, 2), (5, 3), (5, 5), (7, 2), (11, 1)])
    def test_multiplicative_exhaustive(self, p, n):
        F = make_field(p, n)
        assert F.q <= 3125
        X = np.arange(F.q, dtype=np.int64)
        chi = F.vchi(X)
        # chi(x) chi(y) = chi(xy) on the grid
        G = F.vmul(X[:, None], X[None, :])
        assert np.array_equal(chi[:, None] * chi[None, :], F.vchi(G))

    @pytest.mark.parametrize("p,n", [(5, 1), (5, 2), (7, 2), (13, 1)])
    def test_square_count(self, p, n):
        F = make_field(p, n)
        plus = sum(1 for x in F.elements() if quadratic_character(F, x) == 1)
        assert plus == (F.q - 1) // 2

    def test_matches_exponentiation(self):
        F = make_field(5, 2)
        for x in F.elements():
            s = F.pow(x, (F.q - 1) // 2) if x else 0
            expected = 0 if x == 0 else (1 if s == 1 else -1)
            assert quadratic_character(F, x) == expected


class TestEmbed:
    def test_zero_and_one(self):
        F1, F2 = make_field(5, 1), make_field(5, 2)
        assert embed(0, F1, F2) == 0
        assert embed(1, F1, F2) == 1

    def test_ring_hom_exhaustive(self):
        F1, F2 = make_field(5, 1), make_field(5, 2)
        for a in range(5):
            for b in range(5):
                assert embed(F1.mul(a, b), F1, F2) == F2.mul(embed(a, F1, F2), embed(b, F1, F2))
                assert embed(F1.add(a, b), F1, F2) == F2.add(embed(a, F1, F2), embed(b, F1, F2))

    def test_injective_and_frobenius(self):
        F2, F4 = make_field(5, 2), make_field(5, 4)
        images = {embed(x, F2, F4) for x in F2.elements()}
        assert len(images) == F2.q
        for x in range(F2.q):
            assert embed(F2.pow(x, 5), F2, F4) == F4.pow(embed(x, F2, F4), 5)

    def test_rejects_non_divisor(self):
        F2, F3 = make_field(5, 2), make_field(5, 3)
        with pytest.raises(InvalidInput):
            embed(1, F2, F3)


class TestPolyGcd:
    def test_gcd_with_zero(self):
        F = make_field(5, 1)
        f = P(F, 2, 4)  # 4t + 2
        assert poly_gcd(f, Poly.zero(F)) == f.monic()

    def test_hand_euclid(self):
        F = make_field(5, 1)
        f = P(F, -1, -2, 1)  # t^2 - 2t - 1
        g = P(F, -2, 2)      # 2t - 2
        assert poly_gcd(f, g) == P(F, 1)

    def test_frobenius_identity_char5(self):
        F = make_field(5, 1)
        f = P(F, -1, 0, 0, 0, 0, 1)  # t^5 - 1
        assert f.derivative().is_zero()
        assert poly_gcd(f, f.derivative()) == f.monic()
        # and t^5 - 1 = (t - 1)^5
        lin = P(F, -1, 1)
        prod = lin
        for _ in range(4):
            prod = prod * lin
        assert f == prod

    def test_random_gcd_properties(self):
        F = make_field(5, 1)
        rng = random.Random(7)
        for _ in range(60):
            f = Poly(F, [rng.randrange(5) for _ in range(rng.randrange(1, 9))])
            g = Poly(F, [rng.randrange(5) for _ in range(rng.randrange(1, 9))])
            if f.is_zero() or g.is_zero():
                continue
            d = poly_gcd(f, g)
            assert (f % d).is_zero()
            assert (g % d).is_zero()
            lcm = (f * g) // d
            assert d.degree + lcm.degree == f.degree + g.degree


class TestSquarefree:
    def test_repeated_root(self):
        F = make_field(5, 1)
        assert not is_squarefree(P(F, 0, 0, 1))  # t^2

    def test_separable_quadratic(self):
        F = make_field(5, 1)
        assert is_squarefree(P(F, -1, -2, 1))

    def test_char5_quintic(self):
        F = make_field(5, 1)
        # t^5 - 5t - 1 = t^5 - 1 = (t-1)^5 over F_5
        assert not is_squarefree(P(F, -1, -5, 0, 0, 0, 1))

    def test_zero_rejected(self):
        F = make_field(5, 1)
        with pytest.raises(InvalidInput):
            is_squarefree(Poly.zero(F))


def brute_distinct_roots(f):
    """Count distinct roots in the closure by scanning F_{p^k}, k <= deg f."""
    exact = {}
    for k in range(1, f.degree + 1):
        E = make_field(f.field.p, k)
        nk = len(roots_in_field(f, E))
        exact[k] = nk - sum(exact[d] for d in exact if k % d == 0)
    return sum(exact.values())


class TestDistinctRootCount:
    def test_cube(self):
        F = make_field(5, 1)
        assert distinct_root_count(P(F, 0, 0, 0, 1)) == 1

    def test_linear(self):
        F = make_field(5, 1)
        assert distinct_root_count(P(F, -2, 2)) == 1

    @pytest.mark.parametrize("p,d", [(5, 4), (7, 4), (5, 12)])
    def test_twist_poly_derivative(self, p, d):
        # derivative of t^d - dt - 1 is d(t^{d-1} - 1); for p not dividing
        # d(d-1) it has d-1 distinct roots, the (d-1)-st roots of unity
        assert d * (d - 1) % p != 0
        F = make_field(p, 1)
        fd = P(F, *([-1, -d] + [0] * (d - 2) + [1]))
        assert distinct_root_count(fd.derivative()) == d - 1

    def test_against_brute_force(self):
        F = make_field(5, 1)
        rng = random.Random(11)
        for _ in range(12):
            f = Poly(F, [rng.randrange(5) for _ in range(rng.randrange(2, 8))])
            if f.degree < 1:
                continue
            assert distinct_root_count(f) == brute_distinct_roots(f)


class TestCriticalValuePoly:
    def test_t_squared(self):
        F = make_field(5, 1)
        cvp = critical_value_poly(P(F, 0, 0, 1))
        assert cvp == P(F, 0, 1)  # single critical value 0

    def test_quadratic(self):
        F = make_field(5, 1)
        cvp = critical_value_poly(P(F, -1, -2, 1))
        assert cvp == P(F, -3, 1)  # f(1) = -2 = 3 mod 5

    def test_quartic_closed_form(self):
        # f = t^4 - 4t - 1 over F_5: critical values are -3u - 1 over the
        # cube roots of unity u, so the critical-value polynomial is
        # (y+1)^3 + 27 = y^3 + 3y^2 + 3y + 3 mod 5
        F = make_field(5, 1)
        cvp = critical_value_poly(P(F, -1, -4, 0, 0, 1))
        assert cvp == P(F, 3, 3, 3, 1)
        assert is_squarefree(cvp)

    def test_degree_matches_derivative(self):
        F = make_field(7, 1)
        rng = random.Random(3)
        for _ in range(20):
            f = Poly(F, [rng.randrange(7) for _ in range(rng.randrange(2, 7))])
            if f.degree < 1 or f.derivative().is_zero():
                continue
            cvp = critical_value_poly(f)
            assert cvp.degree == f.derivative().degree
            assert cvp.is_monic()
            # roots of the result are exactly the f-images of roots of f'
            for k in range(1, cvp.degree + 1):
                E = make_field(7, k)
                crit = {f.evaluate(u, E) for u in roots_in_field(f.derivative(), E)}
                assert set(roots_in_field(cvp, E)) == crit

    def test_inseparable_rejected(self):
        F = make_field(5, 1)
        with pytest.raises(InvalidInput):
            critical_value_poly(P(F, 1, 0, 0, 0, 0, 1))  # t^5 + 1


class TestRootsInField:
    def test_sqrt_of_minus_one(self):
        F = make_field(5, 1)
        assert roots_in_field(P(F, 1, 0, 1), F) == [2, 3]

    def test_no_roots(self):
        F = make_field(5, 1)
        assert roots_in_field(P(F, 2, 0, 1), F) == []

    def test_fermat(self):
        F = make_field(5, 1)
        f = P(F, *([0, -1] + [0, 0, 0] + [1]))  # t^5 - t
        assert roots_in_field(f, F) == [0, 1, 2, 3, 4]

    def test_extension_roots(self):
        F = make_field(5, 1)
        E = make_field(5, 2)
        roots = roots_in_field(P(F, 2, 0, 1), E)  # t^2 + 2 = modulus of F_25
        assert len(roots) == 2
        g = lift(P(F, 2, 0, 1), E)
        for r in roots:
            assert g.evaluate(r) == 0

    def test_algebraic_path_matches_scan(self):
        # same roots whether found by table scan or by gcd splitting
        from twistscan import galois
        F = make_field(5, 1)
        E = make_field(5, 3)
        f = P(F, 1, 2, 0, 3, 1)
        scan = roots_in_field(f, E)
        saved = E._tables_built
        try:
            E._tables_built = False
            alg = roots_in_field(f, E)
        finally:
            E._tables_built = saved
        assert scan == alg


class TestFactor:
    def test_reassembly(self):
        F = make_field(5, 1)
        rng = random.Random(23)
        for _ in range(25):
            f = Poly(F, [rng.randrange(5) for _ in range(rng.randrange(2, 10))])
            if f.degree < 1:
                continue
            facs = factor(f)
            prod = Poly.constant(F, f.lc)
            for g, m in facs:
                assert is_irreducible(g)
                for _ in range(m):
                    prod = prod * g
            assert prod == f

    def test_known_factorization(self):
        F = make_field(5, 1)
        f = P(F, -1, -5, 0, 0, 0, 1)  # (t-1)^5
        assert factor(f) == [(P(F, -1, 1), 5)]

    def test_squarefree_decomposition(self):
        F = make_field(5, 1)
        f = P(F, 0, 1) * P(F, 1, 1) * P(F, 1, 1)  # t (t+1)^2
        sq = squarefree_decomposition(f)
        assert sorted((g.coeffs, m) for g, m in sq) == [((0, 1), 1), ((1, 1), 2)]

    def test_deterministic(self):
        F = make_field(5, 2)
        f = Poly(F, [3, 1, 4, 1, 5 % 25, 9, 1])
        assert factor(f) == factor(f)


class TestCharpolyOracle:
    def brute_charpoly(self, M, F):
        """det(yI - M) by Leibniz expansion over permutations."""
        from itertools import permutations
        n = len(M)
        total = Poly.zero(F)
        for perm in permutations(range(n)):
            sign = 1
            seen = [False] * n
            for i in range(n):
                if not seen[i]:
                    j, clen = i, 0
                    while not seen[j]:
                        seen[j] = True
                        j = perm[j]
                        clen += 1
                    if clen % 2 == 0:
                        sign = -sign
            term = Poly(F, (1,))
            for i in range(n):
                if perm[i] == i:
                    term = term * Poly(F, (F.neg(M[i][i]), 1))
                else:
                    term = term * Poly.constant(F, F.neg(M[i][perm[i]]))
            total = total + (term if sign == 1 else -term)
        return total

    def test_hessenberg_matches_leibniz(self):
        from twistscan.galois import _hessenberg_charpoly
        rng = random.Random(5)
        for F in (make_field(5, 1), make_field(5, 2)):
            for n in (1, 2, 3, 4):
                for _ in range(8):
                    M = [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)]
                    assert _hessenberg_charpoly(M, F) == self.brute_charpoly(M, F)
