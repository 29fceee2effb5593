import pytest

from twistscan.galois import InvalidInput, Poly, make_field
from twistscan.fibration import build_twist_family, legendre_base, legendre_family
from twistscan.lfunction import (
    CountingError,
    LPolynomial,
    NeedsMore,
    TraceVector,
    ValidationError,
    complete_by_fe,
    euler_product_l,
    l_polynomial,
    newton_coefficients,
    power_sums,
    probe_degree,
    trace_sum,
    unitarize_mod_ell,
    weil_check,
)


def twist(p, alpha, d=2, n=1):
    F = make_field(p, n)
    Fp = make_field(p, 1)
    a, b, c = legendre_base(Fp)
    from twistscan.galois import lift
    fd = Poly.from_ints(Fp, [-1, -d] + [0] * (d - 2) + [1])
    g = lift(fd, F) - Poly.constant(F, alpha)
    return build_twist_family(a, b, c, g)


class TestNewton:
    def test_zero_traces(self):
        assert newton_coefficients([0, 0, 0], 3) == [1, 0, 0, 0]

    def test_first_identity(self):
        assert newton_coefficients([7], 1) == [1, 7]

    def test_inverse_roots_two_three(self):
        # (1 - 2T)(1 - 3T) = 1 - 5T + 6T^2; its trace data are the negated
        # power sums -(2^m + 3^m)
        assert newton_coefficients([-5, -13], 2) == [1, -5, 6]

    def test_non_integral_raises(self):
        with pytest.raises(CountingError):
            newton_coefficients([1, 0], 2)  # c_2 = 1/2

    def test_round_trip_self_dual(self):
        # synthetic polynomials with inverse roots closed under g -> Q^2/g
        Q = 5
        cases = [
            (1, 0, Q**2),                      # roots +-iQ
            (1, -2 * Q, Q**2),                 # (1 - QT)^2
            (1, 0, 0, 0, Q**4),                # quartic, eps = +1
            (1, -Q, Q**2, -Q**3, Q**4, -Q**5, Q**6),
        ]
        for coeffs in cases:
            n = len(coeffs) - 1
            b = power_sums(coeffs, n)
            assert newton_coefficients(b, n) == list(coeffs)
            # trailing coefficients of the exp series vanish
            b_ext = power_sums(coeffs, n + 3)
            assert newton_coefficients(b_ext, n + 3)[n + 1:] == [0, 0, 0]


class TestCompleteByFE:
    def test_middle_coefficient(self):
        res = complete_by_fe((1, 0, 5), 4, 5)
        assert res == ((1, 0, 5, 0, 625), 1)

    def test_needs_more(self):
        assert complete_by_fe((1, 0), 2, 5) == NeedsMore(2)

    def test_degree_zero(self):
        assert complete_by_fe((1,), 0, 5) == ((1,), 1)

    def test_negative_sign(self):
        # c_2 = 0 with c_1 != 0 determined by the (1, 3) pair
        res = complete_by_fe((1, 2, 0, -50), 4, 5)
        assert res == ((1, 2, 0, -50, -625), -1)

    def test_inconsistent_sign(self):
        with pytest.raises(ValidationError):
            complete_by_fe((1, 2, 3), 2, 5)  # c_2 must be +-25 c_0

    def test_zero_nonzero_pair_rejected(self):
        with pytest.raises(ValidationError):
            complete_by_fe((1, 0, 7, 5), 4, 5)  # c_1 = 0 but c_3 != 0

    def test_precondition(self):
        with pytest.raises(InvalidInput):
            complete_by_fe((1,), 4, 5)


class TestTraceVector:
    def test_bound_enforced(self):
        with pytest.raises(ValidationError):
            TraceVector(5, (31,))  # (5+1)(4+1) = 30 is the m=1 bound

    def test_bound_accepts_extremes(self):
        TraceVector(5, (30, -30))


class TestTraceSums:
    def test_legendre_base_traces_vanish(self):
        F5 = make_field(5, 1)
        fam = legendre_family(F5)
        for m in (1, 2):
            assert trace_sum(fam, make_field(5, m)) == 0

    def test_direct_matches_default(self):
        fam = twist(5, 0)
        for m in (1, 2):
            F = make_field(5, m)
            assert trace_sum(fam, F) == trace_sum(fam, F, direct=True)

    def test_jobs_do_not_change_result(self):
        fam = twist(5, 1)
        F = make_field(5, 2)
        assert trace_sum(fam, F, jobs=1) == trace_sum(fam, F, jobs=3)

    def test_nonminimal_twist_zero_correction(self):
        # base with additive fiber at t=0 twisted by g = t: the fiber at 0
        # minimalizes to a good curve and must enter the trace sum
        F = make_field(5, 1)
        b = Poly.from_ints(F, [0, 0, 1, 1])
        c = Poly.from_ints(F, [0, 0, 0, 1, 1])
        fam = build_twist_family(Poly.zero(F), b, c, Poly.x(F))
        assert trace_sum(fam, F) == trace_sum(fam, F, direct=True)


class TestLPolynomial:
    def test_base_is_trivial(self):
        F5 = make_field(5, 1)
        L = l_polynomial(legendre_family(F5), F5)
        assert L.N == 0 and L.coeffs == (1,)

    def test_twist_degree_four(self):
        L = l_polynomial(twist(5, 0), make_field(5, 1))
        assert L.N == 4
        assert L.coeffs[0] == 1
        assert L.coeffs[4] == L.eps * 5**4
        assert L.eps in (1, -1)

    def test_pipeline_equals_euler_product(self):
        F5 = make_field(5, 1)
        for alpha in (0, 1):
            fam = twist(5, alpha)
            L = l_polynomial(fam, F5)
            assert tuple(L.coeffs) == euler_product_l(fam, F5)

    def test_fe_exactness(self):
        L = l_polynomial(twist(5, 1), make_field(5, 1))
        for j in range(L.N + 1):
            assert L.coeffs[L.N - j] == L.eps * 5**(L.N - 2 * j) * L.coeffs[j]

    def test_validate_rejects_tampering(self):
        L = l_polynomial(twist(5, 0), make_field(5, 1))
        bad = LPolynomial(L.Q, L.N, L.eps,
                          L.coeffs[:-1] + (L.coeffs[-1] + 1,))
        with pytest.raises(ValidationError):
            bad.validate()

    def test_json_round_trip(self):
        L = l_polynomial(twist(5, 0), make_field(5, 1))
        doc = L.to_json()
        assert doc["coeffs"] == [str(c) for c in L.coeffs]
        L2 = LPolynomial.from_json(doc)
        assert L2.coeffs == L.coeffs and L2.eps == L.eps


class TestWeilCheck:
    def test_trivial(self):
        assert weil_check(LPolynomial(5, 0, 1, (1,)))

    def test_double_root(self):
        Q = 7
        assert weil_check(LPolynomial(Q, 2, 1, (1, -2 * Q, Q**2)))

    def test_constructed_violation(self):
        Q = 5
        L = LPolynomial(Q, 2, 1, (1, -(Q + 1), Q))  # (1 - T)(1 - QT)
        assert not weil_check(L)

    def test_degree_cap(self):
        with pytest.raises(InvalidInput):
            weil_check(LPolynomial(5, 65, 1, (1,) + (0,) * 64 + (5**65,)))


class TestUnitarize:
    def test_trivial(self):
        assert unitarize_mod_ell(LPolynomial(5, 0, 1, (1,)), 3) == (1,)

    def test_rank_one_factor(self):
        L = LPolynomial(5, 2, 1, (1, -2 * 5, 25))  # (1 - QT)^2
        assert unitarize_mod_ell(L, 3) == (1, 1, 1)  # (1 - T)^2 mod 3

    def test_modular_inverse(self):
        # c_1 = 10 over Q = 5 maps to 10 * 5^{-1} = 2 mod 3
        L = LPolynomial(5, 2, 1, (1, 10, 25))
        assert unitarize_mod_ell(L, 3)[1] == 2

    def test_lift_property(self):
        L = l_polynomial(twist(5, 0), make_field(5, 1))
        for ell in (3, 7, 11):
            pbar = unitarize_mod_ell(L, ell)
            qn = pow(L.Q, L.N, ell)
            for j, pj in enumerate(pbar):
                assert (pj * qn - L.coeffs[j] * pow(L.Q, L.N - j, ell)) % ell == 0

    def test_orthogonal_fe_mod_ell(self):
        L = l_polynomial(twist(5, 1), make_field(5, 1))
        for ell in (3, 7):
            pbar = unitarize_mod_ell(L, ell)
            rev = tuple(reversed(pbar))
            assert rev == tuple(L.eps * c % ell for c in pbar)

    def test_rejections(self):
        L = LPolynomial(5, 0, 1, (1,))
        with pytest.raises(InvalidInput):
            unitarize_mod_ell(L, 5)
        with pytest.raises(InvalidInput):
            unitarize_mod_ell(L, 2)
        with pytest.raises(InvalidInput):
            unitarize_mod_ell(L, 9)


class TestProbeDegree:
    def test_recovers_conductor_degree(self):
        fam = twist(5, 0)
        F5 = make_field(5, 1)
        report = probe_degree(fam, F5, 4)
        assert report["conductor_degree_minus_4"] == 4
        assert [c["N"] for c in report["consistent_degrees"]] == [4]

    def test_trivial_l(self):
        F5 = make_field(5, 1)
        report = probe_degree(legendre_family(F5), F5, 3)
        assert {c["N"] for c in report["consistent_degrees"]} == {0}
