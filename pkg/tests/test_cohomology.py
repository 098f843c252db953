"""Tests for the exact linear algebra and both cohomology pipelines."""

import random
import unittest
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis.strategies import integers

from superforms import (
    Eliminator,
    UnsupportedSpaceError,
    builtin_p11,
    cech,
    cech_derham_check,
    cech_h0,
    cech_h1,
    derham,
    exterior_d,
    pairing_matrix,
    pretty_print,
    pullback,
)
from superforms.cohomology import build_section_basis, p11_sheaf_monomials

P11 = builtin_p11()


def random_columns(rng, rows, count, density=0.6):
    cols = []
    for _ in range(count):
        col = {}
        for r in range(rows):
            if rng.random() < density:
                col[r] = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
        cols.append({r: c for r, c in col.items() if c})
    return cols


def as_sympy(cols, rows):
    return sympy.Matrix([[cols[j].get(i, Fraction(0)) for j in range(len(cols))] for i in range(rows)])


class TestEliminator(unittest.TestCase):
    @settings(deadline=None, max_examples=40)
    @given(integers(0, 10**6))
    def test_rank_matches_reference(self, seed):
        rng = random.Random(seed)
        rows, count = rng.randint(1, 6), rng.randint(1, 8)
        cols = random_columns(rng, rows, count)
        elim = Eliminator()
        for t, col in enumerate(cols):
            elim.insert(col, t)
        self.assertEqual(elim.rank, as_sympy(cols, rows).rank())

    @settings(deadline=None, max_examples=40)
    @given(integers(0, 10**6))
    def test_dependency_combos_reconstruct_zero(self, seed):
        rng = random.Random(seed)
        rows, count = rng.randint(1, 6), rng.randint(2, 9)
        cols = random_columns(rng, rows, count)
        elim = Eliminator()
        for t, col in enumerate(cols):
            combo = elim.insert(col, t)
            if combo is None:
                continue
            self.assertEqual(combo[t], 1)
            total = {}
            for tag, weight in combo.items():
                for r, c in cols[tag].items():
                    total[r] = total.get(r, Fraction(0)) + weight * c
            self.assertTrue(all(v == 0 for v in total.values()), msg=str(total))

    def test_duplicate_column_dependency(self):
        elim = Eliminator()
        col = {0: Fraction(2), 2: Fraction(-1)}
        self.assertIsNone(elim.insert(col, "a"))
        combo = elim.insert(dict(col), "b")
        self.assertEqual(combo, {"b": 1, "a": -1})

    def test_zero_column(self):
        elim = Eliminator()
        combo = elim.insert({}, "z")
        self.assertEqual(combo, {"z": 1})
        self.assertEqual(elim.rank, 0)


class TestSheafBases(unittest.TestCase):
    def test_picture_zero_monomials(self):
        self.assertEqual([pretty_print_mon(m) for m in p11_sheaf_monomials(0, 0)], ["1", "psi"])
        self.assertEqual(
            [pretty_print_mon(m) for m in p11_sheaf_monomials(2, 0)],
            ["dg*dpsi", "psi*dg*dpsi", "dpsi^2", "psi*dpsi^2"],
        )

    def test_picture_one_monomials(self):
        self.assertEqual(
            [pretty_print_mon(m) for m in p11_sheaf_monomials(-1, 1)],
            ["delta'(dpsi)", "psi*delta'(dpsi)", "dg*delta''(dpsi)", "psi*dg*delta''(dpsi)"],
        )
        self.assertEqual(
            [pretty_print_mon(m) for m in p11_sheaf_monomials(1, 1)],
            ["dg*delta(dpsi)", "psi*dg*delta(dpsi)"],
        )

    def test_unsupported_picture(self):
        with self.assertRaises(UnsupportedSpaceError):
            p11_sheaf_monomials(0, 2)

    def test_section_basis_window(self):
        basis = build_section_basis((0, 0), "U0", 2)
        self.assertEqual(basis.window, (0, 2))
        self.assertEqual(
            [(pretty_print_mon(m), e) for m, e in basis.elements],
            [("1", 0), ("1", 1), ("1", 2), ("psi", 0), ("psi", 1), ("psi", 2)],
        )
        overlap = build_section_basis((1, 1), "overlap", 1)
        self.assertEqual(overlap.window, (-6, 6))
        self.assertEqual(len(overlap.elements), 2 * 13)


class TestCech(unittest.TestCase):
    def test_structure_sheaf(self):
        report = cech(P11, (0, 0), 8)
        self.assertEqual((report.h0, report.h1), (1, 0))
        self.assertTrue(report.stabilized)
        self.assertEqual(pretty_print(report.generators_h0[0]["U0"]), "1")

    def test_positive_twist_has_only_h1(self):
        report = cech(P11, (1, 0), 8)
        self.assertEqual((report.h0, report.h1), (0, 4))
        self.assertTrue(report.stabilized)

    def test_negative_twist_has_only_h0(self):
        report = cech(P11, (-2, 1), 8)
        self.assertEqual((report.h0, report.h1), (12, 0))
        self.assertTrue(report.stabilized)

    def test_volume_sheaf_class(self):
        report = cech(P11, (1, 1), 8)
        self.assertEqual((report.h0, report.h1), (0, 1))
        self.assertEqual(pretty_print(report.generators_h1[0]), "g^-1*psi*dg*delta(dpsi)")

    def test_kernel_generators_actually_glue(self):
        m01 = P11.transition("U0", "U1")
        report = cech_h0(P11, (-1, 1), 8)
        self.assertEqual(report.h0, 8)
        for parts in report.generators_h0:
            diff = parts["U0"] - pullback(m01, parts["U1"])
            self.assertTrue(diff.is_zero())

    def test_vacuous_probe_window_not_stabilized(self):
        report = cech_h1(P11, (5, 0), 3)
        self.assertFalse(report.stabilized)


class TestDeRham(unittest.TestCase):
    def test_projective_picture_zero(self):
        report = derham("p11", 0, (0, 3), 8)
        self.assertEqual([report.dims[(i, 0)] for i in range(4)], [1, 0, 0, 0])
        self.assertTrue(report.stabilized)
        self.assertEqual(pretty_print(report.generators[0][0]["U0"]), "1")

    def test_projective_picture_one(self):
        report = derham("p11", 1, (-2, 1), 8)
        self.assertEqual([report.dims[(i, 1)] for i in range(-2, 2)], [0, 0, 1, 0])
        gen = report.generators[0][0]
        self.assertEqual(pretty_print(gen["U0"]), "psi*delta(dpsi)")
        self.assertEqual(pretty_print(gen["U1"]), "psi*delta(dpsi)")
        for chart_id in ("U0", "U1"):
            self.assertTrue(exterior_d(gen[chart_id]).is_zero())

    def test_flat_line(self):
        report = derham("flat:1,1", 1, (0, 3), 5)
        self.assertEqual([report.dims[(i, 1)] for i in range(4)], [1, 0, 0, 0])
        self.assertEqual(pretty_print(report.generators[0][0]["U0"]), "psi*delta(dpsi)")
        self.assertTrue(report.stabilized)

    def test_flat_two_odd_directions(self):
        report = derham("flat:1,2", 1, (0, 2), 5)
        self.assertEqual([report.dims[(i, 1)] for i in range(3)], [2, 0, 0])
        gens = sorted(pretty_print(g["U0"]) for g in report.generators[0])
        self.assertEqual(gens, ["psi1*delta(dpsi1)", "psi2*delta(dpsi2)"])

    def test_unknown_space_label(self):
        with self.assertRaises(UnsupportedSpaceError):
            derham("bogus", 0, (0, 1), 4)


class TestPairingMatrix(unittest.TestCase):
    def test_rank_full_for_line(self):
        matrix, rank = pairing_matrix(1, 10)
        self.assertEqual(len(matrix), 8)
        self.assertEqual(rank, 8)

    def test_entries_rational(self):
        matrix, _ = pairing_matrix(0, 8)
        for row in matrix:
            for entry in row:
                self.assertIsInstance(entry, Fraction)


class TestCechDeRhamConsistency(unittest.TestCase):
    def test_dimensions_agree(self):
        report = cech_derham_check(8)
        self.assertTrue(report.passed, msg=str(report.mismatches))
        self.assertEqual(report.derham_dims, report.constant_sheaf_dims)
        self.assertEqual(report.fiber_dim, 1)


def pretty_print_mon(mon):
    from superforms import normalize

    table = P11.chart("U0").table
    return pretty_print(normalize(mon.factors(), 1, "U0", table))


if __name__ == "__main__":
    unittest.main()
