"""Unit tests for the lattice module."""
import json
import unittest

import numpy as np

from ymt.errors import InputError
from ymt.lattice import Lattice


class LatticeUnitTest(unittest.TestCase):
    def test_cell_counts(self):
        """Test the number of cells of a 2 x 3 x 4 lattice."""
        lattice = Lattice((2, 3, 4))

        self.assertEqual(24, lattice.n_sites)
        self.assertEqual(3, lattice.n_planes)
        self.assertEqual(24 * 3, len(lattice.edges()))
        self.assertEqual(24 * 3, len(lattice.plaquettes()))
        self.assertEqual(24, len(lattice.cubes()))

    def test_lexicographic_order(self):
        """Test that cells are listed by base vertex first."""
        lattice = Lattice((2, 2))

        self.assertEqual([(0, 0), (0, 1), (1, 0), (1, 1)], lattice.vertices())
        self.assertEqual((0, (0, 0)), lattice.edges()[0])
        self.assertEqual((1, (0, 0)), lattice.edges()[1])
        self.assertEqual((0, (0, 1)), lattice.edges()[2])

    def test_indices(self):
        """Test that cell indices follow the enumeration order."""
        lattice = Lattice((3, 2, 2))

        for k, (mu, x) in enumerate(lattice.edges()):
            self.assertEqual(k, lattice.edge_index(mu, x))
            self.assertEqual((mu, x), lattice.edge(k))

        for k, (mu, nu, x) in enumerate(lattice.plaquettes()):
            self.assertEqual(k, lattice.plaquette_index(mu, nu, x))
            self.assertEqual((mu, nu, x), lattice.plaquette(k))

    def test_shift_matches_neighbour(self):
        """Test that shift reads the value at x + mu, with wrap around."""
        lattice = Lattice((3, 4))
        values = np.arange(12.0).reshape(3, 4)

        for mu in range(2):
            shifted = lattice.shift(values, mu)

            for x in lattice.vertices():
                self.assertEqual(values[lattice.neighbour(x, mu)],
                                 shifted[x])

    def test_invalid(self):
        """Test that degenerate lattices are rejected."""
        with self.assertRaises(InputError):
            Lattice((4,))

        with self.assertRaises(InputError):
            Lattice((0, 2))

        with self.assertRaises(InputError):
            Lattice((2, 2), volume_weight=0)

    def test_json(self):
        """Test whether a lattice can be saved to and loaded from JSON."""
        lattice = Lattice((2, 3, 4, 5), volume_weight=0.5)
        dump = json.dumps(lattice.to_json())

        self.assertEqual(lattice, Lattice.from_json(json.loads(dump)))


if __name__ == '__main__':
    unittest.main()
