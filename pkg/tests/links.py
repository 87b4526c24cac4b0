"""Unit tests for the links module."""
import json
import unittest

import numpy as np

from ymt.catalog import Algebras, Embeddings
from ymt.cochain import AlgebraCochain1
from ymt.errors import InputError, SingularityError
from ymt.lattice import Lattice
from ymt.links import GaugeTransform, LinkField


class LinkFieldUnitTest(unittest.TestCase):
    def test_identity_is_flat(self):
        """Test that the trivial connection has zero curvature."""
        for algebra in Algebras.all():
            links = LinkField.identity(Lattice((2, 3)), algebra)

            self.assertTrue(links.is_identity())
            self.assertTrue(links.plaquette_curvature().is_zero(1e-14),
                            algebra.name)

    def test_log_inverts_exp(self):
        """Test that the edgewise logarithm undoes exp for small fields."""
        rng = np.random.default_rng(42)
        lattice = Lattice((2, 2, 3))

        for algebra in Algebras.all():
            d = AlgebraCochain1.random(lattice, algebra, rng, 0.3)

            self.assertTrue(d.exp().log().allclose(d, 1e-10), algebra.name)

    def test_curvature_is_covariant(self):
        """Test that gauge transforms conjugate plaquette curvatures at the
        base vertex.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))

        for algebra in [Algebras.su2(), Algebras.so3()]:
            links = LinkField.random(lattice, algebra, rng)
            g = GaugeTransform.random(lattice, algebra, rng)
            before = links.plaquette_curvature()
            after = links.gauge_transform(g).plaquette_curvature()

            self.assertTrue(after.allclose(before.adjoint(g), 1e-10),
                            algebra.name)

    def test_abelian_curvature_is_invariant(self):
        """Test that abelian curvatures do not change under gauge
        transforms.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        algebra = Algebras.u1()
        links = LinkField.random(lattice, algebra, rng)
        g = GaugeTransform.random(lattice, algebra, rng)

        self.assertTrue(links.gauge_transform(g).plaquette_curvature()
                        .allclose(links.plaquette_curvature(), 1e-12))

    def test_branch_cut_is_singular(self):
        """Test that a plaquette with holonomy -1 raises a singularity
        error.
        """
        lattice = Lattice((2, 2))
        links = LinkField.identity(lattice, Algebras.u1())
        links.values[0][(0, 0)] = [[-1.0]]

        with self.assertRaises(SingularityError):
            links.plaquette_curvature()

        with self.assertRaises(SingularityError):
            links.log()

    def test_rejects_non_group_values(self):
        """Test that link values off the group are rejected."""
        lattice = Lattice((2, 2))
        values = 2 * LinkField.identity(lattice, Algebras.su2()).values

        with self.assertRaises(InputError):
            LinkField(lattice, Algebras.su2(), values)

        with self.assertRaises(InputError):
            LinkField(lattice, Algebras.su2(), values[0])

    def test_embed(self):
        """Test that embedded SO(2) links have curvature in the image of
        so(2).
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        embedding = Embeddings.so2_so3()
        links = LinkField.random(lattice, embedding.source, rng)
        embedded = links.embed(embedding)

        self.assertEqual(Algebras.so3(), embedded.algebra)

        expected = embedding.embed_algebra(
            links.plaquette_curvature().values)

        self.assertTrue(np.allclose(embedded.plaquette_curvature().values,
                                    expected, rtol=0, atol=1e-12))

    def test_json(self):
        """Test whether a link field can be saved to and loaded from JSON."""
        rng = np.random.default_rng(42)
        links = LinkField.random(Lattice((2, 3)), Algebras.su2(), rng)
        dump = json.dumps(links.to_json())

        self.assertTrue(links.allclose(LinkField.from_json(json.loads(dump)),
                                       0.0))


class GaugeTransformUnitTest(unittest.TestCase):
    def test_inverse(self):
        """Test that a transform composed with its inverse is the identity.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((2, 3))
        algebra = Algebras.su2()
        g = GaugeTransform.random(lattice, algebra, rng)

        self.assertTrue(g.compose(g.inverse()).allclose(
            GaugeTransform.identity(lattice, algebra), 1e-12))

    def test_composition_acts_in_order(self):
        """Test that acting by a composite equals acting twice."""
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 2))
        algebra = Algebras.so3()
        links = LinkField.random(lattice, algebra, rng)
        g, h = (GaugeTransform.random(lattice, algebra, rng) for _ in
                range(2))

        once = links.gauge_transform(g.compose(h))
        twice = links.gauge_transform(h).gauge_transform(g)

        self.assertTrue(once.allclose(twice, 1e-12))

    def test_local(self):
        """Test that a local transform changes only the links at its vertex.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((3, 3))
        algebra = Algebras.su2()
        links = LinkField.random(lattice, algebra, rng)
        g = GaugeTransform.local(lattice, algebra, (1, 1),
                                 algebra.finite_generators[0])
        moved = links.gauge_transform(g)
        touched = {(0, (1, 1)), (1, (1, 1)), (0, (0, 1)), (1, (1, 0))}

        for mu, x in lattice.edges():
            same = np.allclose(moved.values[mu][x], links.values[mu][x],
                               rtol=0, atol=1e-14)
            self.assertEqual((mu, x) not in touched, same)

    def test_rejects_non_group_values(self):
        """Test that gauge transforms must be group valued."""
        lattice = Lattice((2, 2))

        with self.assertRaises(InputError):
            GaugeTransform.constant(lattice, Algebras.so3(), 2 * np.eye(3))


if __name__ == '__main__':
    unittest.main()
