"""Unit tests for the category module."""
import json
import unittest

import numpy as np

from ymt.catalog import Algebras, Embeddings
from ymt.category import ExtMorphism, bf_identity_iso, classify, compose, \
    count_morphisms, embedding_probe, identity_morphism, inverse, \
    random_morphism, random_morphism_corpus, terminal_check, vacuum_domain
from ymt.constructors import connection_domain, graph_domain, make_bf, \
    make_constant, make_identity, make_null, make_retract
from ymt.domain import Configuration
from ymt.errors import InputError, VerificationError
from ymt.lattice import Lattice
from ymt.theory import YMTTheory


class BFIsomorphismUnitTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        rng = np.random.default_rng(42)
        lattice = Lattice((2, 2, 2, 2))
        base = YMTTheory(lattice, Algebras.su2())
        cls.m = bf_identity_iso(base, connection_domain(lattice, base.algebra,
                                                        rng, seeds=4))

    def test_is_isomorphism(self):
        """Test that D -> (D, F_D) is an isomorphism with a verified
        inverse.
        """
        self.assertEqual(dict(mono=True, epi=True, iso=True),
                         classify(self.m))

        back = inverse(self.m)
        there_and_back = compose(back, self.m)

        self.assertEqual(list(range(len(self.m.source.domain))),
                         there_and_back.f)
        self.assertEqual(self.m.source.correction_indices, there_and_back.g)

    def test_composition_laws(self):
        """Test the identity and associativity laws of composition."""
        m, back = self.m, inverse(self.m)

        left = compose(identity_morphism(m.target), m)
        right = compose(m, identity_morphism(m.source))

        self.assertEqual((m.f, m.g), (left.f, left.g))
        self.assertEqual((m.f, m.g), (right.f, right.g))

        first = compose(back, compose(m, back))
        second = compose(compose(back, m), back)

        self.assertEqual((first.f, first.g), (second.f, second.g))

    def test_compose_needs_matching_ends(self):
        """Test that morphisms only compose end to start."""
        with self.assertRaises(InputError):
            compose(self.m, self.m)

    def test_slices_of_isomorphism(self):
        """Test that the slices of an isomorphism all commute and that its
        inverse passes the morphism checks.
        """
        report = embedding_probe(self.m)

        self.assertTrue(report['bijective'])
        self.assertTrue(report['iso'])
        self.assertTrue(all(s['ok'] for s in report['slices'].values()))
        self.assertTrue(report['inverse']['ok'])
        self.assertTrue(report['conservative'])
        self.assertEqual(None, report['point'])

    def test_json(self):
        """Test whether a morphism can be saved to and loaded from JSON."""
        dump = json.dumps(self.m.to_json())
        loaded = ExtMorphism.from_json(json.loads(dump), self.m.source,
                                       self.m.target)

        self.assertEqual((self.m.f, self.m.g), (loaded.f, loaded.g))
        self.assertTrue(loaded.check()['ok'])


class MorphismUnitTest(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(42)
        self.lattice = Lattice((2, 2))
        self.base = YMTTheory(self.lattice, Algebras.su2())
        self.embedding = Embeddings.identity(self.base.algebra)
        self.domain = connection_domain(self.lattice, self.base.algebra, rng,
                                        seeds=4)
        self.identity = make_identity(self.base, self.domain)

    def test_broken_morphism(self):
        """Test that collapsing the domain onto the vacuum breaks the S-hat
        triangle and is no isomorphism.
        """
        n = len(self.domain)
        m = ExtMorphism(self.identity, self.identity, [0] * n, [0] * n)
        report = m.check()

        self.assertFalse(report['ok'])
        self.assertTrue(any('s_hat' in f for f in report['failures']))

        with self.assertRaises(VerificationError):
            m.verify()

        with self.assertRaises(InputError):
            inverse(m)

    def test_shape_failures(self):
        """Test that maps of the wrong size are reported."""
        m = ExtMorphism(self.identity, self.identity, [0], [0])

        self.assertEqual(None, m.check()['triangles'])

    def test_non_equivariant_map(self):
        """Test that a map that ignores the gauge action is reported."""
        n = len(self.domain)
        f = list(range(n))
        f[1], f[2] = f[2], f[1]
        m = ExtMorphism(self.identity, self.identity, f, f)
        report = m.check()

        self.assertFalse(report['ok'])
        self.assertIn('equivariant', report['failures'][0])

    def test_bijective_map_that_is_not_a_morphism(self):
        """Test that a bijective triple whose inverse is not equivariant is
        reported as not conservative, with the failing point.
        """
        n = len(self.domain)
        f = list(range(n))
        f[1], f[2] = f[2], f[1]
        report = embedding_probe(ExtMorphism(self.identity, self.identity,
                                             f, f))

        self.assertTrue(report['bijective'])
        self.assertFalse(report['valid'])
        self.assertFalse(report['inverse']['ok'])
        self.assertIn('equivariant', report['inverse']['failures'][0])
        self.assertFalse(report['conservative'])
        self.assertIsNotNone(report['point'])


class TerminalUnitTest(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(42)
        lattice = Lattice((2, 2))
        self.base = YMTTheory(lattice, Algebras.su2())
        self.embedding = Embeddings.identity(self.base.algebra)
        self.domain = connection_domain(lattice, self.base.algebra, rng,
                                        seeds=4)
        self.nullext = make_null(self.base, self.embedding, vacuum_domain(
            lattice, self.base.algebra, self.domain.generators))

    def test_null_extension_is_terminal(self):
        """Test that identity, retract and constant extensions map to the
        null extension as expected.
        """
        graph = graph_domain(self.domain, off_graph=True)
        candidates = [
            make_identity(self.base, self.domain),
            make_retract(self.base, graph, lambda c: Configuration(
                c.links, c.links.plaquette_curvature())),
            make_constant(self.base, self.embedding, self.domain, 1)]
        report = terminal_check(candidates, self.nullext)
        identity, retract, constant = report['witnesses']

        self.assertTrue(report['terminal'])
        self.assertEqual(1, identity['count'])
        self.assertEqual(1, retract['count'])
        self.assertEqual(0, constant['count'])
        self.assertFalse(constant['complete'])
        self.assertEqual('correction', constant['obstruction'])

    def test_larger_target_is_not_terminal(self):
        """Test that a complete extension on a larger domain receives many
        morphisms.
        """
        identity = make_identity(self.base, self.domain)
        target = make_constant(self.base, self.embedding, self.domain, 0)
        counted = count_morphisms(identity, target)

        self.assertGreater(counted['count'], 1)
        self.assertFalse(terminal_check([identity], target)['terminal'])

    def test_vacuum_domain(self):
        """Test that the vacuum domain holds the trivial connection only."""
        domain = vacuum_domain(Lattice((2, 3)), Algebras.so3())

        self.assertEqual(1, len(domain))
        self.assertEqual([0], domain.vacuum_indices())


class CorpusUnitTest(unittest.TestCase):
    def test_conservative(self):
        """Test that 500 random morphisms are valid, that some are bijective
        and some are not, and that every bijective one has a valid inverse.
        """
        rng = np.random.default_rng(42)
        base = YMTTheory(Lattice((2, 2)), Algebras.su2())
        corpus = random_morphism_corpus(rng, 500, base)
        bijective = 0

        self.assertEqual(500, len(corpus))

        for m in corpus:
            self.assertTrue(m.check()['ok'])

            report = embedding_probe(m)

            self.assertTrue(report['valid'])
            self.assertTrue(report['conservative'])
            self.assertEqual(report['iso'], classify(m)['iso'])

            if report['bijective']:
                bijective += 1

                self.assertTrue(report['iso'])
                self.assertTrue(report['inverse']['ok'])
            else:
                self.assertNotIn('inverse', report)

        self.assertGreater(bijective, 0)
        self.assertLess(bijective, 500)

    def test_retract_draws(self):
        """Test that morphisms between the identity and retract extensions
        are drawn as valid maps that are not bijective.
        """
        rng = np.random.default_rng(7)
        lattice = Lattice((2, 2))
        base = YMTTheory(lattice, Algebras.su2())
        domain = connection_domain(lattice, base.algebra, rng, seeds=2)
        identity = make_identity(base, domain)
        retract = make_retract(base, graph_domain(domain, off_graph=True),
                               lambda c: Configuration(
                                   c.links, c.links.plaquette_curvature()))

        for source, target in ((identity, retract), (retract, identity)):
            m = random_morphism(rng, source, target)
            report = embedding_probe(m)

            self.assertTrue(m.check()['ok'])
            self.assertFalse(report['bijective'])
            self.assertTrue(report['conservative'])
            self.assertNotIn('inverse', report)

        self.assertEqual(None, random_morphism(
            rng, identity, make_null(base, Embeddings.identity(base.algebra),
                                     domain)))

    def test_bf_draw(self):
        """Test that a morphism drawn from the identity to the BF extension
        is the curvature graph isomorphism.
        """
        rng = np.random.default_rng(42)
        lattice = Lattice((2, 2, 2, 2))
        base = YMTTheory(lattice, Algebras.su2())
        domain = connection_domain(lattice, base.algebra, rng, seeds=2)
        identity = make_identity(base, domain)
        bf = make_bf(base, graph_domain(domain))
        m = random_morphism(rng, identity, bf)

        self.assertEqual(list(range(len(domain))), m.f)
        self.assertTrue(m.check()['ok'])
        self.assertTrue(embedding_probe(m)['conservative'])
        self.assertTrue(embedding_probe(random_morphism(
            rng, bf, identity))['inverse']['ok'])

    def test_four_dimensional_corpus(self):
        """Test a small corpus on a 2^4 lattice, where BF is included."""
        rng = np.random.default_rng(42)
        base = YMTTheory(Lattice((2, 2, 2, 2)), Algebras.su2())

        for m in random_morphism_corpus(rng, 20, base):
            self.assertTrue(embedding_probe(m)['conservative'])


if __name__ == '__main__':
    unittest.main()
