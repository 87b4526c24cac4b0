"""Finite sampled configuration spaces closed under gauge generators."""
import bisect
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ymt import config
from ymt.cochain import AlgebraCochain0, AlgebraCochain2
from ymt.errors import InputError
from ymt.links import GaugeTransform, LinkField
from ymt.verbosity import Verbosity, log

CONNECTION = 'connection'
EXTENDED = 'extended'
CORRECTION = 'correction'

TAGS = (CONNECTION, EXTENDED, CORRECTION)


class Configuration:
    """A point of an extended configuration space: links, optionally
    together with a 2-cochain B (BF theory) and a vertex section phi (a
    Higgs field). Gauge transforms act on every component.
    """

    def __init__(self, links, b=None, phi=None):
        if not isinstance(links, LinkField):
            raise InputError('A configuration needs a LinkField, got %s.' %
                             type(links).__name__)

        for name, component, kind in [('b', b, AlgebraCochain2),
                                      ('phi', phi, AlgebraCochain0)]:
            if component is not None and (
                    not isinstance(component, kind) or
                    component.lattice != links.lattice):
                raise InputError('The %s component must be a %s on %r.' %
                                 (name, kind.__name__, links.lattice))

        self.links = links
        self.b = b
        self.phi = phi

    def __repr__(self):
        parts = ['links']

        if self.b is not None:
            parts.append('b')

        if self.phi is not None:
            parts.append('phi')

        return 'Configuration(%s)' % ', '.join(parts)

    @property
    def lattice(self):
        return self.links.lattice

    @property
    def algebra(self):
        return self.links.algebra

    @property
    def is_connection(self):
        """A bare connection, without extra components."""
        return self.b is None and self.phi is None

    def is_vacuum(self, atol=1e-12):
        """Whether the links are trivial."""
        return self.links.is_identity(atol)

    def act(self, g):
        """Apply a gauge transform to every component."""
        return Configuration(self.links.gauge_transform(g),
                             self.b.adjoint(g) if self.b is not None
                             else None,
                             self.phi.adjoint(g) if self.phi is not None
                             else None)

    def connection_part(self):
        return Configuration(self.links)

    def allclose(self, other, atol=1e-12):
        if not isinstance(other, Configuration) or \
                not self.links.allclose(other.links, atol):
            return False

        for mine, theirs in [(self.b, other.b), (self.phi, other.phi)]:
            if (mine is None) != (theirs is None):
                return False

            if mine is not None and not mine.allclose(theirs, atol):
                return False

        return True

    def flat_values(self):
        """All components as one real vector, used for fingerprints."""
        parts = [self.links.values.real.reshape(-1),
                 self.links.values.imag.reshape(-1)]

        for component in [self.b, self.phi]:
            parts.append(component.values.reshape(-1)
                         if component is not None else np.zeros(1))

        return np.concatenate(parts)

    def to_json(self):
        config_ = dict(links=self.links.to_json())

        if self.b is not None:
            config_['b'] = self.b.to_json()

        if self.phi is not None:
            config_['phi'] = self.phi.to_json()

        return config_

    @staticmethod
    def from_json(config_, algebra=None):
        links = LinkField.from_json(config_['links'], algebra)
        b = AlgebraCochain2.from_json(config_['b'], links.algebra) \
            if 'b' in config_ else None
        phi = AlgebraCochain0.from_json(config_['phi'], links.algebra) \
            if 'phi' in config_ else None

        return Configuration(links, b, phi)


class SampledDomain:
    """A finite indexed set of configurations closed under a list of gauge
    transforms.

    For every generator k the action table maps i to the index of
    generators[k] applied to configurations[i]. Lookups identify
    configurations that agree to match_tolerance.
    """

    # Two configurations are identified when all entries agree to this.
    match_tolerance = 1e-10

    # Domains built by orbit closure stop growing here.
    max_size = 4096

    def __init__(self, configurations, tags=None, generators=None):
        """Create a domain and check that it is closed.

        Arguments:
            configurations: a list of Configuration.
            tags: a list of sets of tags, one per configuration. Bare
                  connections are tagged CONNECTION and everything
                  EXTENDED by default.
            generators: a list of GaugeTransform.

        Throws: InputError if the set is not closed under the generators or
                contains the same configuration twice.
        """
        self.configurations = list(configurations)

        if not self.configurations:
            raise InputError('A sampled domain needs at least one '
                             'configuration.')

        if tags is None:
            tags = [{CONNECTION} if c.is_connection else set()
                    for c in self.configurations]

        if len(tags) != len(self.configurations):
            raise InputError('Got %d tag sets for %d configurations.' %
                             (len(tags), len(self.configurations)))

        self.tags = []

        for tag_set in tags:
            tag_set = set(tag_set) | {EXTENDED}
            unknown = tag_set - set(TAGS)

            if unknown:
                raise InputError('Unknown tags: %s.' %
                                 ', '.join(sorted(unknown)))

            self.tags.append(frozenset(tag_set))

        self.generators = list(generators) if generators else []
        self._weights = None
        self._fingerprints = []

        for i, configuration in enumerate(self.configurations):
            if self.index_of(configuration) is not None:
                raise InputError('Configuration %d appears twice in the '
                                 'domain.' % i)

            self._insert(configuration, i)

        self.action_tables = [self._action_table(g) for g in self.generators]

    def __len__(self):
        return len(self.configurations)

    def __getitem__(self, index):
        return self.configurations[index]

    def __iter__(self):
        return iter(self.configurations)

    def _fingerprint(self, configuration):
        values = configuration.flat_values()

        if self._weights is None or self._weights.shape != values.shape:
            self._weights = np.random.default_rng(0).uniform(
                0.5, 1.5, size=values.shape)

        return float(values @ self._weights)

    def _window(self):
        return SampledDomain.match_tolerance * float(np.sum(self._weights))

    def _insert(self, configuration, index):
        bisect.insort(self._fingerprints,
                      (self._fingerprint(configuration), index))

    def index_of(self, configuration):
        """Find a configuration.

        Returns: its index, or None if it is not in the domain.
        """
        if not self._fingerprints:
            return None

        key = self._fingerprint(configuration)
        window = self._window()
        start = bisect.bisect_left(self._fingerprints, (key - window, -1))

        for fingerprint, index in self._fingerprints[start:]:
            if fingerprint > key + window:
                break

            if self.configurations[index].allclose(
                    configuration, SampledDomain.match_tolerance):
                return index

        return None

    def __contains__(self, configuration):
        return self.index_of(configuration) is not None

    def _action_table(self, g):
        table = []

        for i, configuration in enumerate(self.configurations):
            j = self.index_of(configuration.act(g))

            if j is None:
                raise InputError('The domain is not closed: a generator '
                                 'maps configuration %d outside it.' % i)

            table.append(j)

        return table

    @staticmethod
    def orbit_closure(seeds, generators, tags=None):
        """Close a list of configurations under the generators.

        Arguments:
            seeds: a list of Configuration.
            generators: a list of GaugeTransform.
            tags: tag sets for the seeds; every point of an orbit inherits
                  the tags of the seed it was reached from.

        Returns: the closed SampledDomain, seeds first, in breadth-first
                 order.
        """
        if tags is None:
            tags = [{CONNECTION} if s.is_connection else set() for s in seeds]

        found = SampledDomain.__new__(SampledDomain)
        found.configurations = []
        found._weights = None
        found._fingerprints = []
        found_tags = []
        queue = []

        for seed, tag_set in zip(seeds, tags):
            if found.index_of(seed) is None:
                found._insert(seed, len(found.configurations))
                found.configurations.append(seed)
                found_tags.append(set(tag_set))
                queue.append(len(found.configurations) - 1)

        while queue:
            i = queue.pop(0)

            for g in generators:
                image = found.configurations[i].act(g)

                if found.index_of(image) is None:
                    if len(found.configurations) >= SampledDomain.max_size:
                        raise InputError('Orbit closure exceeded %d '
                                         'configurations.' %
                                         SampledDomain.max_size)

                    found._insert(image, len(found.configurations))
                    found.configurations.append(image)
                    found_tags.append(set(found_tags[i]))
                    queue.append(len(found.configurations) - 1)

        log.print('Closed %d seeds into a domain of %d configurations.',
                  (len(seeds), len(found.configurations)), Verbosity.FULL)

        return SampledDomain(found.configurations, found_tags, generators)

    def indices_with(self, tag):
        return [i for i, tag_set in enumerate(self.tags) if tag in tag_set]

    def connection_indices(self):
        return self.indices_with(CONNECTION)

    def vacuum_indices(self):
        return [i for i, c in enumerate(self.configurations)
                if c.is_vacuum()]

    def is_closed_subset(self, indices):
        """Whether the generators map the given indices among themselves."""
        members = set(indices)

        return all(table[i] in members for table in self.action_tables
                   for i in members)

    def sub_domain(self, indices):
        """The domain made of the given indices, in the given order."""
        return SampledDomain([self.configurations[i] for i in indices],
                             [self.tags[i] for i in indices],
                             self.generators)

    def same_generators(self, other):
        return len(self.generators) == len(other.generators) and all(
            a.allclose(b, SampledDomain.match_tolerance)
            for a, b in zip(self.generators, other.generators))

    def orbits(self):
        """Partition the indices into orbits of the generated group."""
        seen = set()
        orbits = []

        for start in range(len(self)):
            if start in seen:
                continue

            orbit = [start]
            seen.add(start)
            k = 0

            while k < len(orbit):
                for table in self.action_tables:
                    j = table[orbit[k]]

                    if j not in seen:
                        seen.add(j)
                        orbit.append(j)

                k += 1

            orbits.append(orbit)

        return orbits

    def evaluate(self, function, indices=None):
        """Evaluate a function on configurations, in index order.

        Up to config.THREADS worker threads are used.

        Returns: a list of results.
        """
        if indices is None:
            indices = range(len(self))

        items = [self.configurations[i] for i in indices]

        if config.THREADS > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=config.THREADS) as executor:
                return list(executor.map(function, items))

        return [function(item) for item in items]

    def to_json(self):
        return dict(configurations=[c.to_json() for c in self.configurations],
                    tags=[sorted(t) for t in self.tags],
                    generators=[g.to_json() for g in self.generators])


def gauge_generators(lattice, algebra, elements=None, local_at=None):
    """Gauge transforms built from exact finite order group elements.

    Arguments:
        lattice: the Lattice.
        algebra: the LieAlgebra; its finite generators are used when no
                 elements are given.
        elements: group matrices to use as constant transforms.
        local_at: a vertex; if given, the first element is also used as a
                  transform supported at that vertex only.

    Returns: a list of GaugeTransform.
    """
    if elements is None:
        elements = algebra.finite_generators

    generators = [GaugeTransform.constant(lattice, algebra, h)
                  for h in elements]

    if local_at is not None and len(elements):
        generators.append(GaugeTransform.local(lattice, algebra, local_at,
                                               elements[0]))

    return generators
