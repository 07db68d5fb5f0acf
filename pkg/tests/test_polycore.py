import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quartic_cones.polycore import (
    DegreeError,
    NotDivisibleError,
    Poly,
    PolyMatrix,
    ScopeError,
    clear_denominators,
    det_fraction,
    exact_divide,
    format_poly,
    ideal_spans_critical_degree,
    is_perfect_square,
    macaulay_resultant_ternary,
    matrix_rank,
    nullspace,
    rational_cbrt,
    rational_roots,
    rational_sqrt,
    resultant_bivariate,
    univariate_gcd,
)

x, y, z, w = (Poly.var(n) for n in "xyzw")
s, t, u = (Poly.var(n) for n in "stu")


def random_poly(rng, names="xyz", max_terms=5, max_exp=3, coeff=9):
    total = Poly.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = Poly.const(F(rng.randint(-coeff, coeff)))
        for name in names:
            term = term * Poly.var(name) ** rng.randint(0, max_exp)
        total = total + term
    return total


class TestArith:
    def test_difference_of_squares(self):
        assert (x + y) * (x - y) == x ** 2 - y ** 2

    def test_multiplicative_identity(self):
        rng = random.Random(1)
        for _ in range(20):
            p = random_poly(rng)
            assert p * Poly.const(1) == p

    def test_cube_against_repeated_mul(self):
        p = (x + y + z) ** 3
        q = Poly.const(1)
        for _ in range(3):
            q = q * (x + y + z)
        assert p == q

    def test_ring_axioms_randomized(self):
        rng = random.Random(2)
        for _ in range(25):
            a, b, c = (random_poly(rng, max_terms=4) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            assert a * b == b * a

    def test_zero_poly_has_empty_terms(self):
        assert (x - x).terms == {}
        assert not (x - x)


class TestDerivative:
    def test_power_rule(self):
        assert (x ** 2 * y).partial("x") == 2 * x * y

    def test_unused_variable_in_scope(self):
        v, w = Poly.var("v"), Poly.var("w")
        assert (-w ** 2 + v ** 3).partial("w") == -2 * w

    def test_unknown_variable_is_scope_error(self):
        with pytest.raises(ScopeError):
            (x ** 2 * y).partial("q")

    def test_leibniz_randomized(self):
        rng = random.Random(3)
        for _ in range(25):
            p = random_poly(rng) + x  # force x into scope
            q = random_poly(rng) + x
            assert (p * q).partial("x") == p * q.partial("x") + q * p.partial("x")


class TestSubstitute:
    def test_rename(self):
        assert (x + y).subs({"x": s, "y": t}) == s + t

    def test_line_restriction_shape(self):
        p = (x ** 4 + y ** 4 + z ** 4).subs(
            {"x": u * x, "y": u * y, "z": -(s * x + t * y)})
        assert p == u ** 4 * x ** 4 + u ** 4 * y ** 4 + (s * x + t * y) ** 4

    def test_commutes_with_mul(self):
        rng = random.Random(4)
        bindings = {"x": s + t, "y": s * t - 1}
        for _ in range(15):
            p = random_poly(rng, "xy") + x + y
            q = random_poly(rng, "xy") + x + y
            assert (p * q).subs(bindings) == p.subs(bindings) * q.subs(bindings)

    def test_out_of_scope_binding(self):
        with pytest.raises(ScopeError):
            (x + y).subs({"q": s})


class TestExactDivide:
    def test_monomial_quotient(self):
        assert exact_divide(u ** 4 * (s + t), u ** 4) == s + t

    def test_not_divisible_carries_witness(self):
        with pytest.raises(NotDivisibleError) as err:
            exact_divide(s ** 2 + t ** 2, u)
        assert err.value.remainder == s ** 2 + t ** 2

    def test_klein_h2_over_u4(self):
        # h2 of the Klein quartic, direct from the b-coefficients
        b0, b1, b2, b3, b4 = (-s ** 3 * u, -3 * s ** 2 * t * u + u ** 4,
                              -3 * s * t ** 2 * u, -s * u ** 3 - t ** 3 * u,
                              -t * u ** 3)
        h2 = (-3 * b1 * b3 + 12 * b0 * b4 + b2 ** 2) / 3
        assert exact_divide(h2, u ** 4) == s ** 3 * t + t ** 3 * u + u ** 3 * s

    def test_reconstruction_randomized(self):
        rng = random.Random(5)
        for _ in range(20):
            q = random_poly(rng) + 1
            d = random_poly(rng) + x
            assert exact_divide(q * d, d) == q


class TestDeterminants:
    def test_diagonal(self):
        m = PolyMatrix([[x if i == j else Poly.zero() for j in range(4)]
                        for i, x in enumerate((x, y, z, w))])
        assert m.det() == x * y * z * w

    def test_two_by_two(self):
        assert PolyMatrix([[x, y], [y, x]]).det() == x ** 2 - y ** 2

    def test_cofactor_vs_bareiss_random_linear_4x4(self):
        rng = random.Random(6)
        for _ in range(10):
            entries = [[F(rng.randint(-3, 3)) * x + F(rng.randint(-3, 3)) * y
                        + F(rng.randint(-3, 3)) * z for _ in range(4)]
                       for _ in range(4)]
            m = PolyMatrix(entries)
            assert m.det_cofactor() == m.det_bareiss()

    def test_symmetric_flag_enforced(self):
        with pytest.raises(Exception):
            PolyMatrix([[x, y], [z, x]], symmetric=True)


class TestResultant:
    def test_linear_pair(self):
        a, b = Poly.var("a"), Poly.var("b")
        assert resultant_bivariate(x - a, x - b, "x") == a - b

    def test_shared_root(self):
        assert resultant_bivariate(x ** 2 - 1, x - 1, "x").is_zero()

    def test_degree_zero_rejected(self):
        with pytest.raises(DegreeError):
            resultant_bivariate(Poly.const(3), x - 1, "x")

    def test_vanishes_exactly_on_common_factor(self):
        # Res_x((x - r) f, (x - r) g) is the zero polynomial, and dropping
        # the shared factor from one side makes it nonzero generically
        rng = random.Random(7)
        for _ in range(12):
            r = F(rng.randint(-5, 5))
            f = random_poly(rng, "xy", 3) + x + 1
            g = random_poly(rng, "xy", 3) + x * y + x + 2
            shared_f, shared_g = (x - r) * f, (x - r) * g
            assert resultant_bivariate(shared_f, shared_g, "x").is_zero()

    def test_no_common_factor_nonzero(self):
        assert resultant_bivariate(x ** 2 + 1, x - 3, "x") == Poly.const(10)


class TestMacaulay:
    def test_fermat_partials_nonzero_and_exact_scale(self):
        # Res(x^3, y^3, z^3) = 1, each form degree 3, so scaling by 4 on
        # every coefficient multiplies the resultant by 4^(3*9) = 2^54.
        r = macaulay_resultant_ternary(4 * x ** 3, 4 * y ** 3, 4 * z ** 3)
        assert r == F(2) ** 54

    def test_common_zero_detected(self):
        # partials of x^2 y^2: common zero [0:0:1]
        assert macaulay_resultant_ternary(2 * x * y ** 2, 2 * x ** 2 * y,
                                          Poly.zero()) == 0

    def test_singular_bitangent_quartic(self):
        # (x^2-y^2)^2 + z(x^3+y^3+z^3) is singular at [1:-1:0]: the stated
        # search oracle finds the common zero, so the resultant is zero.
        q = (x ** 2 - y ** 2) ** 2 + z * (x ** 3 + y ** 3 + z ** 3)
        px, py, pz = (q.partial(n) for n in "xyz")
        at = {"x": 1, "y": -1, "z": 0}
        assert q.eval_at(at) == 0
        assert all(p.eval_at(at) == 0 for p in (px, py, pz))
        assert macaulay_resultant_ternary(px, py, pz) == 0

    def test_corrected_bitangent_quartic_smooth(self):
        q = (x ** 2 - y ** 2) ** 2 + z * (x ** 3 + 2 * y ** 3 + z ** 3)
        px, py, pz = (q.partial(n) for n in "xyz")
        assert macaulay_resultant_ternary(px, py, pz) != 0

    def test_rank_fallback_matches_quotient(self):
        smooth = (x ** 3, y ** 3, z ** 3)
        assert ideal_spans_critical_degree(smooth, "xyz", (3, 3, 3))
        sing = ((x * y) ** 1 * x, x ** 2 * y, x * y * z)
        assert not ideal_spans_critical_degree(sing, "xyz", (3, 3, 3))


class TestPerfectSquare:
    def test_linear_square(self):
        q = is_perfect_square((x + 2 * y) ** 2)
        assert q is not None and q * q == (x + 2 * y) ** 2

    def test_non_square(self):
        assert is_perfect_square(x ** 2 + y ** 2) is None

    def test_recovers_up_to_sign_randomized(self):
        rng = random.Random(8)
        for _ in range(25):
            q = random_poly(rng, "xy", 4) + x
            sqrt = is_perfect_square(q * q)
            assert sqrt is not None and sqrt * sqrt == q * q

    def test_scalar_obstruction(self):
        assert is_perfect_square(2 * x ** 2) is None


class TestEulerIdentity:
    def test_weighted_euler(self):
        weights = {"s": 1, "t": 1, "u": 1, "v": 2, "w": 3}
        v, ww = Poly.var("v"), Poly.var("w")
        rng = random.Random(9)
        for _ in range(10):
            # a weighted-homogeneous degree-6 combination
            g4 = random_poly(rng, "stu", 4, 1) + s ** 4 + s * t ** 2 * u
            g4 = Poly({m: c for m, c in g4.terms.items()
                       if sum(e for _, e in m) == 4})
            p = -ww ** 2 + v ** 3 - g4 * v + s ** 6
            total = Poly.zero()
            for name, wt in weights.items():
                total = total + wt * Poly.var(name) * p.partial(name)
            assert total == 6 * p


class TestRationalHelpers:
    def test_sqrt(self):
        assert rational_sqrt(F(9, 4)) == F(3, 2)
        assert rational_sqrt(F(2)) is None
        assert rational_sqrt(F(-1)) is None

    def test_cbrt(self):
        assert rational_cbrt(F(27, 8)) == F(3, 2)
        assert rational_cbrt(F(-27)) == -3
        assert rational_cbrt(F(2)) is None

    def test_rational_roots(self):
        p = (x - 1) * (x - 2) * (3 * x + 1)
        assert sorted(rational_roots(p, "x")) == [F(-1, 3), F(1), F(2)]

    def test_gcd(self):
        g = univariate_gcd((x - 1) ** 2 * (x + 2), (x - 1) * (x - 5), "x")
        assert g == x - 1


class TestLinearAlgebra:
    def test_nullspace_dimension(self):
        basis = nullspace([[F(1), F(2), F(3)], [F(0), F(1), F(1)]])
        assert len(basis) == 1

    def test_rank(self):
        assert matrix_rank([[F(1), F(2)], [F(2), F(4)]]) == 1

    def test_det(self):
        assert det_fraction([[F(1), F(2)], [F(3), F(4)]]) == -2

    def test_clear_denominators(self):
        assert clear_denominators([F(-1, 2), F(1, 3)]) == [F(3), F(-2)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(0, 3), st.integers(0, 3)),
                max_size=5))
def test_square_of_anything_is_detected(terms):
    p = Poly.zero()
    for c, e1, e2 in terms:
        p = p + Poly.const(F(c)) * x ** e1 * y ** e2
    sq = is_perfect_square(p * p)
    assert sq is not None and sq * sq == p * p


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-9, 9), st.integers(0, 4)), max_size=6),
       st.lists(st.tuples(st.integers(-9, 9), st.integers(0, 4)), max_size=6))
def test_add_mul_consistency(aterms, bterms):
    def build(terms):
        p = Poly.zero()
        for c, e in terms:
            p = p + Poly.const(F(c)) * x ** e
        return p

    a, b = build(aterms), build(bterms)
    assert (a + b) * (a - b) == a * a - b * b
