"""Tests for the exact Laurent-polynomial coefficient ring."""

import random
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis.strategies import integers

from superforms import (
    LaurentPoly,
    StructuralError,
    UnsupportedMorphismError,
    lp_add,
    lp_mul,
    lp_neg,
    lp_partial,
    lp_scale,
    lp_substitute_monomial,
)

from formgen import random_poly

VARS = ("g", "h")


def poly_from_seed(seed, terms=3):
    return random_poly(random.Random(seed), VARS, terms=terms, max_exp=4)


def evaluate(p, point):
    """Evaluate at a dict of nonzero Fractions; independent of the ring ops."""
    total = Fraction(0)
    for exps, c in p.items():
        value = c
        for name, e in zip(p.variables, exps):
            value *= point[name] ** e
        total += value
    return total


class TestConstruction(unittest.TestCase):
    def test_zero_and_const(self):
        z = LaurentPoly.zero(VARS)
        self.assertTrue(z.is_zero())
        one = LaurentPoly.const(VARS, 1)
        self.assertEqual(one.coefficient((0, 0)), 1)
        self.assertFalse(one.is_zero())

    def test_zero_coefficients_never_stored(self):
        p = LaurentPoly(VARS, {(1, 0): Fraction(2), (0, 1): Fraction(0)})
        self.assertEqual(list(p.terms), [(1, 0)])
        q = lp_add(p, lp_neg(p))
        self.assertTrue(q.is_zero())
        self.assertEqual(q.terms, {})

    def test_exponent_arity_checked(self):
        with self.assertRaises(StructuralError):
            LaurentPoly(VARS, {(1,): Fraction(1)})

    def test_monomial_and_accessors(self):
        p = LaurentPoly.monomial(VARS, (-2, 3), Fraction(1, 3))
        self.assertTrue(p.is_monomial())
        self.assertEqual(p.single_term(), ((-2, 3), Fraction(1, 3)))
        self.assertEqual(p.coefficient((-2, 3)), Fraction(1, 3))
        self.assertEqual(p.coefficient((0, 0)), 0)
        self.assertEqual(p.total_degree(), 1)
        self.assertEqual(p.degree_in(0), -2)
        self.assertEqual(p.degree_in(1), 3)

    def test_exact_fractions_survive_arithmetic(self):
        third = LaurentPoly.const(VARS, Fraction(1, 3))
        three = LaurentPoly.const(VARS, 3)
        self.assertEqual(lp_mul(third, three), LaurentPoly.const(VARS, 1))


class TestRingAxioms(unittest.TestCase):
    @settings(deadline=None, max_examples=60)
    @given(integers(0, 10**6), integers(0, 10**6), integers(0, 10**6))
    def test_ring_identities(self, sa, sb, sc):
        a, b, c = poly_from_seed(sa), poly_from_seed(sb), poly_from_seed(sc)
        self.assertEqual(a + b, b + a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual(a * b, b * a)
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a + (-a), LaurentPoly.zero(VARS))
        self.assertEqual(a - b, a + (-b))

    @settings(deadline=None, max_examples=60)
    @given(integers(0, 10**6), integers(0, 10**6))
    def test_operations_agree_with_evaluation(self, sa, sb):
        a, b = poly_from_seed(sa), poly_from_seed(sb)
        point = {"g": Fraction(3, 2), "h": Fraction(-5, 7)}
        self.assertEqual(evaluate(lp_add(a, b), point), evaluate(a, point) + evaluate(b, point))
        self.assertEqual(evaluate(lp_mul(a, b), point), evaluate(a, point) * evaluate(b, point))
        self.assertEqual(evaluate(lp_scale(a, Fraction(2, 5)), point), evaluate(a, point) * Fraction(2, 5))

    def test_mixed_variable_sets_rejected(self):
        a = LaurentPoly.const(("g",), 1)
        b = LaurentPoly.const(("h",), 1)
        with self.assertRaises(StructuralError):
            lp_add(a, b)


class TestSubstitution(unittest.TestCase):
    @settings(deadline=None, max_examples=60)
    @given(integers(0, 10**6))
    def test_monomial_substitution_matches_evaluation(self, seed):
        # g -> 2*x^-1*y, h -> (1/3)*x^2, checked by evaluating both sides.
        p = poly_from_seed(seed)
        images = {"g": (Fraction(2), (-1, 1)), "h": (Fraction(1, 3), (2, 0))}
        q = lp_substitute_monomial(p, images, out_variables=("x", "y"))
        point = {"x": Fraction(5, 3), "y": Fraction(-7, 2)}
        pulled = {
            "g": Fraction(2) * point["x"] ** -1 * point["y"],
            "h": Fraction(1, 3) * point["x"] ** 2,
        }
        self.assertEqual(evaluate(q, point), evaluate(p, pulled))

    def test_negative_exponents_invert_exactly(self):
        p = LaurentPoly.monomial(("g",), (-3,))
        q = lp_substitute_monomial(p, {"g": (Fraction(2), (1,))})
        self.assertEqual(q, LaurentPoly.monomial(("g",), (-3,), Fraction(1, 8)))

    def test_zero_image_rejected(self):
        p = LaurentPoly.monomial(("g",), (-1,))
        with self.assertRaises(UnsupportedMorphismError):
            lp_substitute_monomial(p, {"g": (0, (1,))})

    def test_missing_image_rejected(self):
        p = LaurentPoly.const(VARS, 1)
        with self.assertRaises(StructuralError):
            lp_substitute_monomial(p, {"g": (1, (1, 0))})


class TestPartial(unittest.TestCase):
    def test_power_rule_including_negative(self):
        p = LaurentPoly(("g",), {(4,): Fraction(1), (-2,): Fraction(3)})
        d = lp_partial(p, "g")
        self.assertEqual(d, LaurentPoly(("g",), {(3,): Fraction(4), (-3,): Fraction(-6)}))

    def test_constant_kills(self):
        self.assertTrue(lp_partial(LaurentPoly.const(VARS, 7), "g").is_zero())

    @settings(deadline=None, max_examples=60)
    @given(integers(0, 10**6), integers(0, 10**6))
    def test_leibniz_rule(self, sa, sb):
        a, b = poly_from_seed(sa), poly_from_seed(sb)
        for v in VARS:
            lhs = lp_partial(lp_mul(a, b), v)
            rhs = lp_add(lp_mul(lp_partial(a, v), b), lp_mul(a, lp_partial(b, v)))
            self.assertEqual(lhs, rhs)

    def test_unknown_variable(self):
        with self.assertRaises(StructuralError):
            lp_partial(LaurentPoly.const(VARS, 1), "z")


if __name__ == "__main__":
    unittest.main()
