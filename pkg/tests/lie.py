"""Unit tests for the lie and catalog modules."""
import json
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from ymt.catalog import Algebras, Embeddings
from ymt.errors import InputError
from ymt.lie import BilinearForm, GroupEmbedding, LieAlgebra


def dense_invariant_dim(algebra):
    """Count the invariant forms with a nullspace computed from brackets
    alone, independently of LieAlgebra.invariance_operator.
    """
    l = algebra.dim
    eye = np.eye(l)
    rows = []

    for z in range(l):
        for x in range(l):
            for y in range(l):
                zx = algebra.bracket(eye[z], eye[x])
                zy = algebra.bracket(eye[z], eye[y])
                rows.append(np.outer(zx, eye[y]).reshape(-1) +
                            np.outer(eye[x], zy).reshape(-1))

    rank = np.linalg.matrix_rank(np.array(rows), tol=1e-9)

    return l * l - rank


class LieAlgebraUnitTest(unittest.TestCase):
    def test_catalog_validates(self):
        """Test that every catalog algebra passes its own consistency
        checks.
        """
        for algebra in Algebras.all():
            algebra.validate()

    def test_killing_su2(self):
        """Test that the Killing form of su(2) is -2 times the identity."""
        killing = Algebras.su2().killing_form()

        self.assertTrue(np.allclose(killing.matrix, -2 * np.eye(3), rtol=0,
                                    atol=1e-12))
        self.assertTrue(killing.is_symmetric())
        self.assertTrue(killing.is_nondegenerate())

    def test_killing_abelian_is_zero(self):
        """Test that abelian algebras have a vanishing Killing form."""
        for algebra in [Algebras.u1(), Algebras.u1k(3), Algebras.so2()]:
            killing = algebra.killing_form()

            self.assertFalse(np.any(killing.matrix))
            self.assertFalse(killing.is_nondegenerate())

    def test_invariant_basis_dimensions(self):
        """Test the number of invariant forms against known values and a
        dense nullspace count.
        """
        expected = {'su2': 1, 'u1^2': 4, 'su2+u1': 2, 'so3': 1, 'u1': 1}

        for name, dim in expected.items():
            algebra = Algebras.by_name(name)
            basis = algebra.invariant_form_basis()

            self.assertEqual(dim, len(basis), name)
            self.assertEqual(dense_invariant_dim(algebra), len(basis), name)

    def test_invariant_basis_is_invariant(self):
        """Test that each basis form has a vanishing invariance residual."""
        rng = np.random.default_rng(42)
        algebra = Algebras.su2_u1()
        xs, ys, zs = (rng.normal(size=(16, algebra.dim)) for _ in range(3))

        for form in algebra.invariant_form_basis():
            self.assertLess(form.invariance_residual(xs, ys, zs), 1e-10)

    def test_non_invariant_form_detected(self):
        """Test that a generic form on su(2) is not invariant."""
        rng = np.random.default_rng(42)
        algebra = Algebras.su2()
        form = BilinearForm(algebra, np.diag([1.0, 2.0, 3.0]))
        xs, ys, zs = (rng.normal(size=(16, 3)) for _ in range(3))

        self.assertGreater(form.invariance_residual(xs, ys, zs), 1e-3)

    def test_validate_rejects_bad_structure_constants(self):
        """Test that broken antisymmetry and Jacobi are reported."""
        c = np.zeros((2, 2, 2))
        c[0, 1, 0] = 1

        with self.assertRaises(InputError):
            LieAlgebra('broken', c, [np.eye(2), np.eye(2)]).validate()

        with self.assertRaises(InputError):
            LieAlgebra('ragged', np.zeros((2, 3, 2)), [np.eye(2)] * 2)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_bracket_antisymmetric_and_jacobi(self, seed):
        """Test antisymmetry and the Jacobi identity on random vectors."""
        rng = np.random.default_rng(seed)
        algebra = Algebras.su2_u1()
        x, y, z = (rng.normal(size=algebra.dim) for _ in range(3))
        b = algebra.bracket

        self.assertTrue(np.allclose(b(x, y), -b(y, x), rtol=0, atol=1e-12))

        jacobi = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
        self.assertLess(np.max(np.abs(jacobi)), 1e-10)

    def test_exp_lands_in_group(self):
        """Test that exp of algebra elements are unitary or orthogonal."""
        rng = np.random.default_rng(42)

        for algebra in Algebras.all():
            g = algebra.exp(rng.normal(size=(5, algebra.dim)))

            self.assertLess(algebra.group_residual(g), 1e-12, algebra.name)

    def test_adjoint_preserves_killing(self):
        """Test that Ad_g is an isometry of the Killing form."""
        rng = np.random.default_rng(42)

        for algebra in [Algebras.su2(), Algebras.so3()]:
            killing = algebra.killing_form()
            g = algebra.random_element(rng)
            x, y = rng.normal(size=(2, algebra.dim))

            self.assertAlmostEqual(
                float(killing(x, y)),
                float(killing(algebra.adjoint(g, x), algebra.adjoint(g, y))),
                places=10)

    def test_matrix_coordinates(self):
        """Test that from_matrix recovers coefficients."""
        rng = np.random.default_rng(42)

        for algebra in Algebras.all():
            x = rng.normal(size=(4, algebra.dim))

            self.assertTrue(np.allclose(
                algebra.from_matrix(algebra.to_matrix(x)), x, rtol=0,
                atol=1e-12), algebra.name)

    def test_direct_sum(self):
        """Test the direct sum of su(2) and u(1)."""
        algebra = Algebras.su2().direct_sum(Algebras.u1())

        self.assertEqual(4, algebra.dim)
        self.assertEqual(3, algebra.rep_dim)
        algebra.validate()
        self.assertTrue(np.allclose(algebra.killing_form().matrix,
                                    np.diag([-2., -2., -2., 0.])))

    def test_by_name(self):
        """Test catalog lookups."""
        self.assertEqual(2, Algebras.by_name('u1^2').dim)
        self.assertEqual('so3', Algebras.by_name('so3').name)

        with self.assertRaises(InputError):
            Algebras.by_name('e8')

    def test_json(self):
        """Test whether an algebra can be saved to and loaded from JSON."""
        for algebra in Algebras.all():
            dump = json.dumps(algebra.to_json())
            algebra_load = LieAlgebra.from_json(json.loads(dump))

            self.assertEqual(algebra, algebra_load)
            self.assertTrue(np.allclose(algebra.matrix_rep,
                                        algebra_load.matrix_rep))

    def test_json_rejects_unknown_keys(self):
        """Test that algebra JSON with extra keys is rejected."""
        config = Algebras.su2().to_json()
        config['colour'] = 'blue'

        with self.assertRaises(InputError):
            LieAlgebra.from_json(config)


class GroupEmbeddingUnitTest(unittest.TestCase):
    def test_catalog_embeddings_validate(self):
        """Test that the shipped embeddings are injective homomorphisms."""
        for embedding in [Embeddings.so2_so3(), Embeddings.u1_su2(),
                          Embeddings.identity(Algebras.su2())]:
            embedding.validate()

    def test_group_map_matches_algebra_map(self):
        """Test that embedding exp(x) agrees with exp of the embedded x."""
        rng = np.random.default_rng(42)

        for embedding in [Embeddings.so2_so3(), Embeddings.u1_su2()]:
            x = rng.normal(size=(6, embedding.source.dim))
            lhs = embedding.embed_group(embedding.source.exp(x))
            rhs = embedding.target.exp(embedding.embed_algebra(x))

            self.assertTrue(np.allclose(lhs, rhs, rtol=0, atol=1e-12),
                            embedding.name)

    def test_projection_is_left_inverse(self):
        """Test that the projection undoes the algebra map."""
        for embedding in [Embeddings.so2_so3(), Embeddings.u1_su2()]:
            p = embedding.projection()

            self.assertTrue(np.allclose(p @ embedding.algebra_map,
                                        np.eye(embedding.source.dim)))

    def test_rejects_non_injective(self):
        """Test that a zero algebra map is rejected."""
        embedding = GroupEmbedding(Algebras.so2(), Algebras.so3(),
                                   np.zeros((3, 1)))

        with self.assertRaises(InputError):
            embedding.validate()

    def test_identity(self):
        """Test the identity embedding."""
        embedding = GroupEmbedding.identity(Algebras.so3())

        self.assertTrue(embedding.is_identity)
        self.assertFalse(Embeddings.so2_so3().is_identity)


class CoherentEmbeddingUnitTest(unittest.TestCase):
    def test_theta_star_anchors(self):
        """Test the Euler angle Higgs field at the two anchor angles."""
        coherent = Embeddings.hedgehog()

        self.assertTrue(np.allclose(coherent.theta_star(0, 0), [0, 0, 1],
                                    rtol=0, atol=1e-12))
        self.assertTrue(np.allclose(coherent.theta_star(np.pi / 2,
                                                        np.pi / 2),
                                    [1, 0, 0], rtol=0, atol=1e-12))

    @settings(max_examples=50, deadline=None)
    @given(st.floats(0, 2 * np.pi), st.floats(0, np.pi))
    def test_theta_star_closed_form(self, phi, alpha):
        """Test theta_star against its closed form for arbitrary angles."""
        expected = [np.sin(phi) * np.sin(alpha), -np.cos(phi) * np.sin(alpha),
                    np.cos(alpha)]
        actual = Embeddings.hedgehog().theta_star(phi, alpha)

        self.assertTrue(np.allclose(actual, expected, rtol=0, atol=1e-12))
        self.assertAlmostEqual(1.0, float(np.linalg.norm(actual)), places=12)

    def test_theta_star_matrix_is_skew(self):
        """Test that theta_star in the so(3) representation is skew."""
        m = Embeddings.hedgehog().theta_star_matrix(0.3, 1.1)

        self.assertTrue(np.allclose(m, -m.T))

    def test_coherence(self):
        """Test that theta is constant on cosets of SO(2)."""
        coherent = Embeddings.hedgehog()
        residual = coherent.check_coherence(np.random.default_rng(42))

        self.assertLess(residual, 1e-10)


if __name__ == '__main__':
    unittest.main()
