"""Unit tests for the constructors module."""
import unittest

import numpy as np

from ymt.catalog import Algebras, Embeddings
from ymt.constructors import connection_domain, graph_domain, \
    higgs_domain, higgs_vacuum_domain, induced_theory, make_background, \
    make_bf, make_constant, make_higgs, make_higgs_vacuum, make_identity, \
    make_null, make_retract, reduce_links, rescaled, rescaling_emergence, \
    wilson_coupling
from ymt.domain import CORRECTION, Configuration
from ymt.errors import InputError, PreconditionError
from ymt.extension import check_extension
from ymt.lattice import Lattice
from ymt.links import LinkField
from ymt.pairing import PairingSpec
from ymt.theory import YMTTheory


def unit_theory(lattice, algebra):
    """A theory pairing the single generator of an abelian algebra with
    itself, their Killing forms being zero.
    """
    return YMTTheory(lattice, algebra,
                     PairingSpec(lattice, algebra, [[1.0]], label='unit'))


class ConstructorsUnitTest(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.default_rng(42)
        self.lattice = Lattice((2, 2))
        self.base = YMTTheory(self.lattice, Algebras.su2())
        self.embedding = Embeddings.identity(self.base.algebra)
        self.domain = connection_domain(self.lattice, self.base.algebra,
                                        self.rng, seeds=16)

    def assertChecks(self, e, size=64):
        report = check_extension(e)

        self.assertTrue(report['ok'], '%s: %s' % (e.label,
                                                  report['failures']))
        self.assertGreaterEqual(report['points'], size)

    def test_connection_domain_size(self):
        """Test that 16 seeds give 65 configurations for SU(2)."""
        self.assertEqual(65, len(self.domain))

    def test_null(self):
        """Test the null extension, also along U(1) -> SU(2)."""
        e = make_null(self.base, self.embedding, self.domain)

        self.assertChecks(e)
        self.assertEqual(self.domain.vacuum_indices(), e.correction_indices)
        self.assertTrue(all(v == 0 for v in e.s_hat))

        embedding = Embeddings.u1_su2()
        u1 = YMTTheory(self.lattice, embedding.source)

        self.assertChecks(make_null(u1, embedding, self.domain))

    def test_identity(self):
        """Test that S^G extends itself completely."""
        e = make_identity(self.base, self.domain)

        self.assertChecks(e)
        self.assertTrue(e.complete and e.full)

    def test_identity_needs_invariant_action(self):
        """Test that a non-invariant pairing is refused."""
        theory = YMTTheory(self.lattice, self.base.algebra, PairingSpec(
            self.lattice, self.base.algebra, [[1.0, 0.5, 0.0],
                                              [0.5, 2.0, 0.0],
                                              [0.0, 0.0, 3.0]]))

        with self.assertRaises(PreconditionError):
            make_identity(theory, self.domain)

    def test_constant(self):
        """Test constant extensions over the vacuum and a random d0."""
        d0 = LinkField.random(self.lattice, self.base.algebra, self.rng)
        e = make_constant(self.base, self.embedding, self.domain, 0.5, d0)

        self.assertChecks(e)
        self.assertAlmostEqual(self.base.ymt_action(d0) + 0.5,
                               float(e.s_hat[3]), places=12)

    def test_retract(self):
        """Test the retraction of the curvature graph and its complement
        onto the graph.
        """
        domain = graph_domain(self.domain, off_graph=True)
        e = make_retract(self.base, domain, lambda c: Configuration(
            c.links, c.links.plaquette_curvature()))

        self.assertChecks(e, 128)
        self.assertEqual(len(self.domain), len(e.correction_indices))
        self.assertEqual(e.s_hat[5], e.s_hat[len(self.domain) + 4])

    def test_retract_must_fix_connections(self):
        """Test that a map moving connections is not a retraction."""
        domain = graph_domain(self.domain)
        shifted = [(i + 1) % len(domain) for i in range(len(domain))]

        with self.assertRaises(InputError):
            make_retract(self.base, domain, shifted)

    def test_bf(self):
        """Test the BF extension on the curvature graph of a 2^4 lattice."""
        lattice = Lattice((2, 2, 2, 2))
        base = YMTTheory(lattice, Algebras.su2())
        domain = graph_domain(connection_domain(lattice, base.algebra,
                                                self.rng, seeds=16))
        e = make_bf(base, domain)

        self.assertChecks(e)
        self.assertEqual(domain.indices_with(CORRECTION),
                         e.correction_indices)

        with self.assertRaises(InputError):
            make_bf(self.base, graph_domain(self.domain))

    def test_higgs(self):
        """Test the Higgs extension over SO(3)."""
        coherent = Embeddings.hedgehog()
        base = YMTTheory(self.lattice, coherent.target)
        domain = higgs_domain(self.lattice, coherent, self.rng)
        e = make_higgs(base, coherent, domain)

        self.assertChecks(e)
        self.assertFalse(e.complete)

        for p, i in enumerate(e.correction_indices):
            self.assertIsNotNone(domain[i].phi)
            self.assertEqual(e.s_hat[i], e.base_values[p] + e.correction[p])

    def test_higgs_vacuum(self):
        """Test the Higgs vacuum extension along SO(2) -> SO(3)."""
        embedding = Embeddings.so2_so3()
        base = unit_theory(self.lattice, embedding.source)
        domain = higgs_vacuum_domain(self.lattice, embedding, self.rng,
                                     parallel=8, generic=8)
        e = make_higgs_vacuum(base, embedding, domain)

        self.assertChecks(e)
        self.assertEqual(1 + 8 * 2, len(e.correction_indices))
        self.assertTrue(e.equivariant)

    def test_higgs_vacuum_u1_su2(self):
        """Test the Higgs vacuum extension along U(1) -> SU(2) with a local
        generator.
        """
        embedding = Embeddings.u1_su2()
        base = unit_theory(self.lattice, embedding.source)
        domain = higgs_vacuum_domain(self.lattice, embedding, self.rng,
                                     parallel=4, generic=2, local_at=(1, 0))
        e = make_higgs_vacuum(base, embedding, domain)

        self.assertTrue(check_extension(e)['ok'])

    def test_reduce_links(self):
        """Test that reducing embedded links recovers the original ones."""
        embedding = Embeddings.so2_so3()
        links = LinkField.random(self.lattice, embedding.source, self.rng)

        self.assertTrue(reduce_links(links.embed(embedding), embedding)
                        .allclose(links, 1e-12))

    def test_induced_theory(self):
        """Test that the induced theory agrees with the base on embedded
        links.
        """
        embedding = Embeddings.so2_so3()
        base = unit_theory(self.lattice, embedding.source)
        links = LinkField.random(self.lattice, embedding.source, self.rng)
        induced = induced_theory(base, embedding)

        self.assertAlmostEqual(base.ymt_action(links),
                               induced.ymt_action(links.embed(embedding)),
                               places=12)

    def test_background(self):
        """Test a Wilson plaquette background coupled to S^G."""
        e = make_background(self.base, self.domain, wilson_coupling, 0.5)

        self.assertChecks(e)
        self.assertEqual(0, e.correction[self.domain.vacuum_indices()[0]])

    def test_background_needs_invariant_coupling(self):
        """Test that a coupling that sees the gauge is refused."""
        def coupling(configuration, section):
            return section * float(np.real(configuration.links.values[0][
                (0, 0)][0, 1]))

        with self.assertRaises(PreconditionError):
            make_background(self.base, self.domain, coupling, 1.0)

    def test_rescaling_emergence(self):
        """Test the emergence of S^G from the rescaled family."""
        domain = connection_domain(self.lattice, self.base.algebra, self.rng,
                                   seeds=16, scale=0.1)
        e = rescaling_emergence(self.base, domain)

        self.assertChecks(e)
        self.assertTrue(e.complete)

        for p, i in enumerate(e.correction_indices):
            self.assertTrue(e.delta[p].allclose(
                rescaled(domain[i].links, 2), 1e-12))


if __name__ == '__main__':
    unittest.main()
