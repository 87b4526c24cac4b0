"""Unit tests for the scalar module."""
import json
import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from ymt.catalog import Algebras
from ymt.cochain import AlgebraCochain1
from ymt.errors import InputError
from ymt.lattice import Lattice
from ymt.links import LinkField
from ymt.pairing import PairingSpec
from ymt.scalar import ALL_REALS, ScalarPolynomial, invariance_roots, \
    is_proper, sample_invariance_roots, scalar_poly, \
    semi_nondegeneracy_probe
from ymt.theory import YMTTheory


def unit_u1_theory(lattice):
    """A u(1) theory with a positive pairing, the Killing form being zero.
    """
    algebra = Algebras.u1()

    return YMTTheory(lattice, algebra,
                     PairingSpec(lattice, algebra, [[1.0]], label='unit'))


class ScalarPolynomialUnitTest(unittest.TestCase):
    def assertRootsAlmostEqual(self, expected, roots):
        self.assertEqual(len(expected), len(roots), roots)

        for e, r in zip(expected, roots):
            self.assertAlmostEqual(e, r, places=10)

    def test_pure_differential(self):
        """Test that p = a (t^2 - t) has the roots 0 and 1."""
        self.assertRootsAlmostEqual([0, 1], ScalarPolynomial(2.5, 0, 0)
                                    .roots())

    def test_pure_mixed_term(self):
        """Test that p = b (2 t^3 - t) has the roots 0 and +-1/sqrt 2."""
        half = math.sqrt(2) / 2

        self.assertRootsAlmostEqual([-half, 0, half],
                                    invariance_roots(ScalarPolynomial(0, 3,
                                                                      0)))

    def test_all_coefficients(self):
        """Test that a = b = c = 1 has one nonzero root, between 0.8 and
        0.9.
        """
        roots = invariance_roots(ScalarPolynomial(1, 1, 1))

        self.assertEqual(2, len(roots))
        self.assertEqual(0.0, roots[0])
        self.assertTrue(0.8 < roots[1] < 0.9)
        self.assertAlmostEqual(0.0, ScalarPolynomial(1, 1, 1)(roots[1]),
                               places=9)

    def test_zero_polynomial(self):
        """Test that the zero polynomial vanishes for every t."""
        self.assertEqual(ALL_REALS, invariance_roots(ScalarPolynomial(0, 0,
                                                                      0)))

    def test_non_finite_coefficients(self):
        """Test that coefficients must be finite."""
        with self.assertRaises(InputError):
            ScalarPolynomial(float('nan'), 0, 0)

    @settings(max_examples=1000, deadline=None)
    @given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
    def test_at_most_four_roots(self, a, b, c):
        """Test that there are at most four ascending roots, each a zero of
        p.
        """
        p = ScalarPolynomial(a, b, c)
        roots = p.roots()

        if roots == ALL_REALS:
            self.assertTrue(a == b == c == 0)
            return

        self.assertLessEqual(len(roots), 4)
        self.assertEqual(sorted(roots), roots)
        self.assertIn(0.0, roots)

        for r in roots:
            self.assertLess(abs(p(r)), 1e-6 * (1 + abs(a) + abs(b) + abs(c)))

    def test_json(self):
        """Test whether a polynomial can be saved to and loaded from JSON."""
        p = ScalarPolynomial(1.5, -2, 0.25)
        loaded = ScalarPolynomial.from_json(json.loads(json.dumps(
            p.to_json())))

        self.assertEqual((p.a, p.b, p.c), (loaded.a, loaded.b, loaded.c))


class ScalarPolyUnitTest(unittest.TestCase):
    def test_scaled_action(self):
        """Test that S[t D] = a t^2 + 2 b t^3 + c t^4."""
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        theory = YMTTheory(lattice, Algebras.su2())
        d = AlgebraCochain1.random(lattice, theory.algebra, rng)
        p = scalar_poly(theory, d)

        for t in [-1.5, -0.5, 0.0, 0.5, 1.0, 2.0]:
            expected = theory.ymt_action(d * t)

            self.assertAlmostEqual(expected, p.scaled_action(t),
                                   delta=1e-10 * max(1.0, abs(expected)))

    def test_rejects_link_fields(self):
        """Test that link fields are rejected."""
        lattice = Lattice((2, 2))
        theory = YMTTheory(lattice, Algebras.su2())

        with self.assertRaises(InputError):
            scalar_poly(theory, LinkField.identity(lattice, theory.algebra))

    def test_abelian_samples(self):
        """Test that abelian connections only have the roots 0 and 1."""
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        theory = unit_u1_theory(lattice)
        samples = [AlgebraCochain1.random(lattice, theory.algebra, rng)
                   for _ in range(4)]
        report = sample_invariance_roots(theory, samples)

        self.assertEqual(4, report['samples'])
        self.assertEqual(2, len(report['roots']))
        self.assertAlmostEqual(0.0, report['roots'][0], places=10)
        self.assertAlmostEqual(1.0, report['roots'][1], places=10)

        with self.assertRaises(InputError):
            sample_invariance_roots(theory, [])

    def test_killing_u1_is_degenerate(self):
        """Test that the Killing pairing of u(1) makes every t a root."""
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        theory = YMTTheory(lattice, Algebras.u1())
        d = AlgebraCochain1.random(lattice, theory.algebra, rng)

        self.assertEqual(ALL_REALS, sample_invariance_roots(theory,
                                                            [d])['roots'])


class ProbeUnitTest(unittest.TestCase):
    def test_semi_nondegeneracy(self):
        """Test that a random connection is semi-nondegenerate and the zero
        connection is not.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        theory = YMTTheory(lattice, Algebras.su2())
        random = semi_nondegeneracy_probe(
            theory, AlgebraCochain1.random(lattice, theory.algebra, rng))
        zero = semi_nondegeneracy_probe(
            theory, AlgebraCochain1.zeros(lattice, theory.algebra))

        self.assertTrue(random['semi_nondegenerate'])
        self.assertEqual(9, len(random['cells']))
        self.assertFalse(zero['semi_nondegenerate'])
        self.assertEqual(9, zero['vanishing'])
        self.assertEqual(0.0, zero['integrated'])

    def test_properness(self):
        """Test the properness conditions for SU(2) and U(1) samples."""
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        su2 = YMTTheory(lattice, Algebras.su2())
        u1 = unit_u1_theory(lattice)

        self.assertTrue(is_proper(su2, [
            AlgebraCochain1.random(lattice, su2.algebra, rng)])['proper'])
        self.assertFalse(is_proper(u1, [
            AlgebraCochain1.random(lattice, u1.algebra, rng)])['proper'])


if __name__ == '__main__':
    unittest.main()
