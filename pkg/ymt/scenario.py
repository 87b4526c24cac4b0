"""Scenario files: the lattice, algebra, pairing, field and extension a
command works on.

A scenario is a JSON object with the keys

    lattice     {"extents": [...], "volume_weight": 1.0}
    algebra     a catalog name such as "su2", or a LieAlgebra JSON object
    pairing     {"kind": "killing" | "matrix" | "position", ...}
    field       {"kind": "random" | "identity" | "small" | "links" |
                 "cochain", ...}
    extension   {"constructor": ..., "embedding": ..., ...}
    settings    tunables, see Workbench.set_config
    seed        the seed of every random draw

Unknown keys are rejected at every level.
"""
import json

import numpy as np

from ymt.catalog import Algebras, Embeddings
from ymt.cochain import AlgebraCochain1, small_field
from ymt.constructors import connection_domain, graph_domain, \
    higgs_domain, higgs_vacuum_domain, make_background, make_bf, \
    make_constant, make_higgs, make_higgs_vacuum, make_identity, make_null, \
    make_retract, rescaling_emergence, wilson_coupling
from ymt.domain import Configuration
from ymt.errors import InputError
from ymt.higgs import QuarticPotential
from ymt.lattice import Lattice
from ymt.lie import LieAlgebra
from ymt.links import LinkField
from ymt.pairing import PairingSpec
from ymt.theory import YMTTheory

KEYS = {'lattice', 'algebra', 'pairing', 'field', 'extension', 'settings',
        'seed'}

LATTICE_KEYS = {'extents', 'volume_weight'}

PAIRING_KEYS = {'kind', 'matrix', 'form2', 'site_forms', 'label'}

FIELD_KEYS = {'kind', 'scale', 'eps', 'constant', 'links', 'edges'}

EXTENSION_KEYS = {'constructor', 'embedding', 'seeds', 'scale', 'c',
                  'correction', 'local_at', 'parallel', 'generic', 'bare',
                  'off_graph', 'section', 'factor', 'coupling', 'vev'}

CONSTRUCTORS = ('null', 'identity', 'constant', 'retract', 'bf', 'higgs',
                'higgs-vacuum', 'background', 'emergence')

DEFAULT_SEED = 42


def _reject_unknown(config, allowed, where):
    if not isinstance(config, dict):
        raise InputError('The %s block must be a JSON object.' % where)

    unknown = set(config) - allowed

    if unknown:
        raise InputError('Unknown keys in %s: %s.' %
                         (where, ', '.join(sorted(unknown))))


class Scenario:
    """A parsed scenario. Blocks that are absent fall back to a 2^4 su(2)
    lattice with the Killing pairing and a random field.
    """

    def __init__(self, lattice, algebra, pairing=None, field=None,
                 extension=None, settings=None, seed=DEFAULT_SEED,
                 path=None):
        self.lattice = lattice
        self.algebra = algebra
        self.pairing_config = pairing if pairing is not None \
            else dict(kind='killing')
        self.field_config = field if field is not None \
            else dict(kind='random')
        self.extension_config = extension if extension is not None else {}
        self.settings = settings if settings is not None else {}
        self.seed = int(seed)
        self.path = path

        _reject_unknown(self.pairing_config, PAIRING_KEYS, 'pairing')
        _reject_unknown(self.field_config, FIELD_KEYS, 'field')
        _reject_unknown(self.extension_config, EXTENSION_KEYS, 'extension')

    def rng(self, stream=0):
        """A Generator seeded from the scenario seed and a stream number."""
        return np.random.default_rng([self.seed, stream])

    def pairing(self):
        config = self.pairing_config
        kind = config.get('kind', 'killing')
        lattice, algebra = self.lattice, self.algebra
        form2 = config.get('form2')
        label = config.get('label', kind)

        if kind == 'killing':
            return PairingSpec(lattice, algebra, algebra.killing_form(),
                               form2, label=label)

        if kind == 'matrix':
            if 'matrix' not in config:
                raise InputError('A matrix pairing needs a matrix.')

            return PairingSpec(lattice, algebra, np.asarray(config['matrix'],
                                                            dtype=float),
                               form2, label=label)

        if kind == 'position':
            forms = {lattice.vertex(int(index)):
                     np.asarray(matrix, dtype=float)
                     for index, matrix in config.get('site_forms', [])}

            return PairingSpec(lattice, algebra, forms, form2, label=label)

        raise InputError('Unknown pairing kind %r.' % kind)

    def theory(self):
        return YMTTheory(self.lattice, self.algebra, self.pairing())

    def field(self, rng=None):
        """The connection described by the field block.

        Returns: a LinkField, or an AlgebraCochain1 for the kinds "small"
                 and "cochain".
        """
        config = self.field_config
        kind = config.get('kind', 'random')
        rng = rng if rng is not None else self.rng(1)
        lattice, algebra = self.lattice, self.algebra

        if kind == 'identity':
            return LinkField.identity(lattice, algebra)

        if kind == 'random':
            return LinkField.random(lattice, algebra, rng,
                                    config.get('scale', 0.3))

        if kind == 'small':
            constant = config.get('constant')

            if constant is None:
                constant = rng.normal(size=(lattice.n, algebra.dim))

            fluctuation = AlgebraCochain1.random(lattice, algebra, rng)

            return small_field(lattice, algebra, constant, fluctuation,
                               config.get('eps', 1e-2))

        if kind == 'links':
            return LinkField.from_json(dict(lattice=lattice.to_json(),
                                            algebra=algebra.name,
                                            links=config['links']),
                                       algebra)

        if kind == 'cochain':
            return AlgebraCochain1.from_json(dict(lattice=lattice.to_json(),
                                                  algebra=algebra.name,
                                                  edges=config['edges']),
                                             algebra)

        raise InputError('Unknown field kind %r.' % kind)

    def embedding(self):
        name = self.extension_config.get('embedding')

        if name is None:
            return Embeddings.identity(self.algebra)

        embedding = Embeddings.by_name(name)

        if embedding.source != self.algebra:
            raise InputError('The embedding %s starts at %s, the scenario is '
                             'over %s.' % (name, embedding.source.name,
                                           self.algebra.name))

        return embedding

    def connection_domain(self, algebra=None, rng=None):
        config = self.extension_config
        local_at = config.get('local_at')

        return connection_domain(
            self.lattice, algebra if algebra is not None else self.algebra,
            rng if rng is not None else self.rng(2),
            config.get('seeds', 8), config.get('scale', 0.3),
            local_at=tuple(local_at) if local_at is not None else None)

    def extension(self, constructor=None):
        """Build the extension named by the extension block.

        Arguments:
            constructor: overrides the block's constructor name.

        Returns: the Extension.
        """
        config = self.extension_config
        name = constructor if constructor else config.get('constructor')

        if name not in CONSTRUCTORS:
            raise InputError('Unknown constructor %r. Known constructors: %s.'
                             % (name, ', '.join(CONSTRUCTORS)))

        base = self.theory()
        rng = self.rng(2)

        if name == 'null':
            embedding = self.embedding()

            return make_null(base, embedding,
                             self.connection_domain(embedding.target, rng))

        if name == 'constant':
            embedding = self.embedding()
            domain = self.connection_domain(embedding.target, rng)

            return make_constant(base, embedding, domain, config.get('c', 1),
                                 correction=config.get('correction'))

        if name == 'identity':
            return make_identity(base, self.connection_domain(rng=rng))

        if name == 'retract':
            domain = graph_domain(self.connection_domain(rng=rng),
                                  off_graph=True)

            return make_retract(base, domain, lambda c: Configuration(
                c.links, c.links.plaquette_curvature()))

        if name == 'bf':
            return make_bf(base, graph_domain(self.connection_domain(rng=rng),
                                              config.get('off_graph', False)))

        if name == 'higgs':
            coherent = Embeddings.hedgehog()

            if self.algebra != coherent.target:
                raise InputError('The Higgs extension needs a scenario over '
                                 'so3.')

            domain = higgs_domain(self.lattice, coherent, rng,
                                  config.get('seeds', 3),
                                  config.get('scale', 0.3),
                                  config.get('bare', 1))
            potential = None

            if 'coupling' in config or 'vev' in config:
                potential = QuarticPotential(config.get('coupling', 1.0),
                                             config.get('vev', 1.0))

            return make_higgs(base, coherent, domain, potential, self.rng(3))

        if name == 'higgs-vacuum':
            embedding = self.embedding()

            if embedding.is_identity:
                raise InputError('A Higgs vacuum needs a proper embedding, '
                                 'e.g. so2->so3.')

            local_at = config.get('local_at')
            domain = higgs_vacuum_domain(
                self.lattice, embedding, rng, config.get('parallel', 3),
                config.get('generic', 2), config.get('scale', 0.3),
                tuple(local_at) if local_at is not None else None)

            return make_higgs_vacuum(base, embedding, domain)

        if name == 'background':
            return make_background(base, self.connection_domain(rng=rng),
                                   wilson_coupling,
                                   config.get('section', 1.0))

        return rescaling_emergence(base, self.connection_domain(rng=rng),
                                   config.get('factor', 2))

    def to_json(self):
        return dict(lattice=self.lattice.to_json(),
                    algebra=self.algebra.name,
                    pairing=self.pairing_config, field=self.field_config,
                    extension=self.extension_config,
                    settings=self.settings, seed=self.seed)

    @staticmethod
    def from_json(config, path=None):
        """Load a scenario from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            path: where it was loaded from, for reports.

        Returns: the Scenario.

        Throws: InputError for unknown keys or malformed blocks.
        """
        _reject_unknown(config, KEYS, 'scenario')

        lattice_config = config.get('lattice', dict(extents=[2, 2, 2, 2]))
        _reject_unknown(lattice_config, LATTICE_KEYS, 'lattice')

        if 'extents' not in lattice_config:
            raise InputError('The lattice block needs extents.')

        lattice = Lattice.from_json(lattice_config)
        algebra = config.get('algebra', 'su2')

        if isinstance(algebra, str):
            algebra = Algebras.by_name(algebra)
        else:
            algebra = LieAlgebra.from_json(algebra)

        seed = config.get('seed', DEFAULT_SEED)

        if not isinstance(seed, int) or isinstance(seed, bool) or \
                not 0 <= seed < 2 ** 64:
            raise InputError('The seed must be a 64 bit unsigned integer, '
                             'got %r.' % (seed,))

        return Scenario(lattice, algebra, config.get('pairing'),
                        config.get('field'), config.get('extension'),
                        config.get('settings'), seed, path)

    @staticmethod
    def load(path):
        """Read a scenario file.

        Throws: InputError if the file cannot be read or parsed.
        """
        try:
            with open(path) as f:
                config = json.load(f)
        except (OSError, ValueError) as e:
            raise InputError('Could not read the scenario %s: %s' % (path, e))

        return Scenario.from_json(config, path)
