"""Periodic hypercubic lattices."""
import itertools

import numpy as np

from ymt.errors import InputError


class Lattice:
    """A periodic hypercubic lattice seen as a cell complex.

    Vertices are integer tuples x with 0 <= x_mu < extents[mu]. The edge
    (mu, x) runs from x to x + mu, the plaquette (mu, nu, x) with mu < nu is
    bounded by the loop x -> x+mu -> x+mu+nu -> x+nu -> x. Cells are always
    enumerated in lexicographic order of their base vertex.
    """

    def __init__(self, extents, volume_weight=1.0):
        """Create a lattice.

        Arguments:
            extents: the number of sites along each direction. There must be
                     at least two directions.
            volume_weight: the weight of each top cell in integrals.
        """
        extents = tuple(int(e) for e in extents)

        if len(extents) < 2:
            raise InputError('A lattice needs at least 2 directions, got %d.'
                             % len(extents))

        if any(e < 1 for e in extents):
            raise InputError('Lattice extents must be positive, got %s.' %
                             (extents,))

        if volume_weight <= 0:
            raise InputError('The volume weight must be positive.')

        self.extents = extents
        self.volume_weight = float(volume_weight)

    def __eq__(self, other):
        return isinstance(other, Lattice) and \
               self.extents == other.extents and \
               self.volume_weight == other.volume_weight

    def __hash__(self):
        return hash((self.extents, self.volume_weight))

    def __repr__(self):
        return 'Lattice(%s)' % 'x'.join(str(e) for e in self.extents)

    @property
    def n(self):
        return len(self.extents)

    @property
    def shape(self):
        return self.extents

    @property
    def n_sites(self):
        return int(np.prod(self.extents))

    @property
    def planes(self):
        """The direction pairs (mu, nu) with mu < nu, in order."""
        return list(itertools.combinations(range(self.n), 2))

    @property
    def n_planes(self):
        return self.n * (self.n - 1) // 2

    def vertices(self):
        return list(np.ndindex(*self.extents))

    def edges(self):
        """All edges (mu, x), ordered by base vertex and then direction."""
        return [(mu, x) for x in self.vertices() for mu in range(self.n)]

    def plaquettes(self):
        """All plaquettes (mu, nu, x) with mu < nu, ordered by base vertex."""
        return [(mu, nu, x) for x in self.vertices()
                for mu, nu in self.planes]

    def cubes(self):
        """The 3-cells (mu, nu, rho, x) with mu < nu < rho."""
        return [(mu, nu, rho, x) for x in self.vertices()
                for mu, nu, rho in itertools.combinations(range(self.n), 3)]

    def vertex_index(self, x):
        return int(np.ravel_multi_index(tuple(x), self.extents))

    def vertex(self, index):
        return tuple(int(i) for i in np.unravel_index(index, self.extents))

    def edge_index(self, mu, x):
        return self.vertex_index(x) * self.n + mu

    def edge(self, index):
        return index % self.n, self.vertex(index // self.n)

    def plaquette_index(self, mu, nu, x):
        return self.vertex_index(x) * self.n_planes + \
               self.planes.index((mu, nu))

    def plaquette(self, index):
        mu, nu = self.planes[index % self.n_planes]

        return mu, nu, self.vertex(index // self.n_planes)

    def neighbour(self, x, mu, k=1):
        """The vertex x + k mu, with periodic wrap around."""
        y = list(x)
        y[mu] = (y[mu] + k) % self.extents[mu]

        return tuple(y)

    def shift(self, values, mu, k=1, offset=0):
        """Move field values so that the result at x holds the value at
        x + k mu.

        Arguments:
            values: an array whose axes offset, ..., offset + n - 1 are the
                    lattice axes.
            mu: the direction.
            k: how many steps.
            offset: the number of leading non-lattice axes.

        Returns: the shifted array.
        """
        return np.roll(values, -k, axis=offset + mu)

    def to_json(self):
        return dict(extents=list(self.extents),
                    volume_weight=self.volume_weight)

    @staticmethod
    def from_json(config):
        """Load a lattice from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.

        Returns: the Lattice.
        """
        unknown = set(config) - {'extents', 'volume_weight'}

        if unknown:
            raise InputError('Unknown keys in lattice: %s.' %
                             ', '.join(sorted(unknown)))

        if 'extents' not in config:
            raise InputError('A lattice needs extents.')

        return Lattice(config['extents'], config.get('volume_weight', 1.0))
