"""Runs single workbench commands and writes their artifacts."""
import csv
import hashlib
import io
import json
import os

import numpy as np

from ymt import config
from ymt.catalog import Algebras
from ymt.category import ExtMorphism, classify, compose, embedding_probe, \
    inverse, terminal_check, vacuum_domain
from ymt.cochain import AlgebraCochain1, AlgebraCochain2
from ymt.constructors import make_null
from ymt.domain import SampledDomain
from ymt.errors import InputError
from ymt.exact import to_exact
from ymt.extension import Extension, act, add, check_extension, \
    module_scalar, restrict
from ymt.group_ring import AdditiveAction, GroupRingElement
from ymt.lattice import Lattice
from ymt.lie import CoherentEmbedding, LieAlgebra
from ymt.links import LinkField
from ymt.pairing import PairingSpec, pairing_space_dim_linear
from ymt.rank import RankQuery, bound_to_json, rank_figure_points, \
    rank_upper_bound
from ymt.scalar import ALL_REALS, ScalarPolynomial, invariance_roots, \
    sample_invariance_roots, scalar_poly, semi_nondegeneracy_probe
from ymt.scenario import Scenario
from ymt.theory import YMTTheory
from ymt.verbosity import Verbosity, log


class Workbench:
    """Runs one command on a scenario and packages the result as an
    artifact carrying the tool version, the command line and the seed.
    """

    def __init__(self, scenario, command_line, fmt='json'):
        """Create a workbench.

        Arguments:
            scenario: the Scenario to work on.
            command_line: the command as typed, echoed in every artifact.
            fmt: json or csv.
        """
        if fmt not in ('json', 'csv'):
            raise InputError('Unknown output format %r.' % fmt)

        self.scenario = scenario
        self.command_line = command_line
        self.fmt = fmt
        self._extensions = {}

        run_id_hash = hashlib.sha1()
        run_id_hash.update(('%s|%d' % (command_line, scenario.seed))
                           .encode('utf-8'))
        self.run_id = run_id_hash.hexdigest()[:16]

        Workbench.set_config(scenario.settings)

    def run(self, group, action, options):
        """Run a command.

        Arguments:
            group: the command group, e.g. rank or ext.
            action: the subcommand within the group.
            options: a dict of command options.

        Returns: the result as a dict. A result with ok = False signals a
                 failed check.
        """
        handler = getattr(self, 'run_%s' % group.replace('-', '_'), None)

        if handler is None:
            raise InputError('Unknown command group %r.' % group)

        log.print('Running %s %s (seed %d).', (group, action,
                                               self.scenario.seed),
                  Verbosity.MINIMAL)

        return handler(action, options)

    # Rank arithmetic.

    def run_rank(self, action, options):
        if action == 'bound':
            query = RankQuery(options['n'], options['l'], options.get('q'),
                              options.get('contractible', False),
                              options.get('parallelizable_abelian', False))
            result = dict(query=query.to_json(),
                          bound=bound_to_json(rank_upper_bound(query)))

            if options.get('algebra'):
                result['pairing_space'] = pairing_space_dim_linear(
                    options['n'], Algebras.by_name(options['algebra']))

            return result

        if action == 'enumerate':
            z, n_max, l_max = options['z'], options['max_n'], options['max_l']

            rows = rank_figure_points(z, n_max, l_max)

            return dict(columns=['n', 'l', 'rank_bound'],
                        rows=[list(row) for row in rows])

        raise InputError('Unknown rank command %r.' % action)

    # Lie algebras.

    def _algebra(self, options):
        name = options.get('algebra')

        return Algebras.by_name(name) if name else self.scenario.algebra

    def run_algebra(self, action, options):
        algebra = self._algebra(options)

        if action == 'killing':
            return dict(algebra=algebra.name,
                        killing=algebra.killing_form().matrix.tolist())

        if action == 'invariant-basis':
            basis = algebra.invariant_form_basis()

            return dict(algebra=algebra.name, dim=len(basis),
                        basis=[b.matrix.tolist() for b in basis])

        raise InputError('Unknown algebra command %r.' % action)

    # Fields and curvature.

    def run_field(self, action, options):
        field = self.scenario.field()

        if action == 'random':
            return dict(field=field.to_json())

        if action == 'curvature':
            theory = self.scenario.theory()
            curvature = theory.field_strength(field)

            return dict(curvature=curvature.to_json(),
                        max_abs=curvature.max_abs())

        raise InputError('Unknown field command %r.' % action)

    # Action functionals.

    def run_action(self, action, options):
        theory = self.scenario.theory()
        field = self.scenario.field()

        if action == 'eval':
            return dict(theory=theory.label, value=theory.ymt_action(field))

        if action == 'gauge-check':
            if not isinstance(field, LinkField):
                field = field.exp()

            report = theory.gauge_invariance_report(
                field, options.get('trials', 32), self.scenario.seed)
            report['ok'] = report['invariant']

            return report

        if action == 'bf':
            b = theory.field_strength(field)

            return dict(value=theory.bf_action(field, b),
                        ymt=theory.ymt_action(field))

        if action == 'topological':
            return dict(topological=theory.topological_term(field),
                        ymt=theory.ymt_action(field),
                        full=theory.full_action(field))

        raise InputError('Unknown action command %r.' % action)

    # Extensions.

    def extension(self, scenario, constructor):
        """Build an extension once per scenario and constructor, so that
        morphisms loaded from different files meet the same objects.
        """
        key = (json.dumps(scenario.to_json(), sort_keys=True), constructor)

        if key not in self._extensions:
            extension = scenario.extension(constructor)
            extension.label = constructor
            self._extensions[key] = extension

        return self._extensions[key]

    def extension_artifact(self, e, scenario, constructor):
        report = check_extension(e)

        return dict(scenario=scenario.to_json(), constructor=constructor,
                    extension=e.to_json(), check=report, ok=report['ok'])

    def load_extension(self, artifact):
        """Rebuild an extension from an artifact and attach the stored
        tables to the rebuilt domain.
        """
        result = artifact.get('result', artifact)

        for key in ('scenario', 'constructor', 'extension'):
            if key not in result:
                raise InputError('The artifact holds no extension (%s '
                                 'missing).' % key)

        scenario = Scenario.from_json(result['scenario'])
        rebuilt = self.extension(scenario, result['constructor'])

        return Extension.from_json(result['extension'], rebuilt.base,
                                   rebuilt.embedding, rebuilt.domain,
                                   rebuilt.delta), scenario

    def run_ext(self, action, options):
        scenario = self.scenario

        if action.startswith('make-'):
            constructor = action[len('make-'):]
            e = self.extension(scenario, constructor)

            return self.extension_artifact(e, scenario, constructor)

        if action in ('scalar-poly', 'roots'):
            return self.run_scalar(action, options)

        inputs = [self.load_extension(_read(path))
                  for path in options.get('inputs') or []]

        if not inputs:
            raise InputError('ext %s needs an input extension (--in).' %
                             action)

        e = inputs[0][0]

        if action == 'check':
            report = check_extension(e)

            return dict(check=report, ok=report['ok'],
                        extension=e.to_json())

        if action == 'sum':
            if len(inputs) != 2:
                raise InputError('ext sum needs exactly two inputs.')

            result = add(e, inputs[1][0])
        elif action == 'act':
            order = options.get('order', 2)
            result = act(AdditiveAction.cyclic(order),
                         options.get('element', 1) % order, e)
        elif action == 'module':
            order = options.get('order', 2)
            coefficients = _parse_coefficients(options.get('coefficients')
                                               or '0:1')
            element = GroupRingElement(AdditiveAction.cyclic(order).group,
                                       coefficients)
            result = module_scalar(element, e, AdditiveAction.cyclic(order))
        elif action == 'restrict':
            indices = options.get('indices')
            indices = [int(i) for i in indices.split(',')] if indices \
                else e.domain.connection_indices()
            result = restrict(e, indices)
        else:
            raise InputError('Unknown ext command %r.' % action)

        report = check_extension(result)

        return dict(extension=result.to_json(), check=report,
                    ok=report['ok'])

    def run_scalar(self, action, options):
        if options.get('abelian_demo'):
            return abelian_demo(self.scenario.seed)

        theory = self.scenario.theory()
        field = self.scenario.field()

        if isinstance(field, LinkField):
            field = field.log()

        p = scalar_poly(theory, field)
        result = dict(polynomial=p.to_json(), roots=_roots_json(
            invariance_roots(p)))

        if action == 'roots':
            samples = options.get('samples') or 0

            if samples:
                rng = self.scenario.rng(4)
                fields = [field] + [AlgebraCochain1.random(
                    theory.lattice, theory.algebra, rng, 0.5)
                    for _ in range(samples - 1)]
                common = sample_invariance_roots(theory, fields)
                result['sampled'] = dict(roots=_roots_json(common['roots']),
                                         samples=common['samples'])

            result['probe'] = semi_nondegeneracy_probe(theory, field)
            del result['probe']['cells']

        return result

    # The category of extensions.

    def load_morphism(self, artifact):
        result = artifact.get('result', artifact)

        for key in ('scenario', 'source', 'target', 'morphism'):
            if key not in result:
                raise InputError('The artifact holds no morphism (%s '
                                 'missing).' % key)

        scenario = Scenario.from_json(result['scenario'])
        source = self.extension(scenario, result['source'])
        target = self.extension(scenario, result['target'])

        return ExtMorphism.from_json(result['morphism'], source, target)

    def morphism_artifact(self, m):
        return dict(scenario=self.scenario.to_json(), source=m.source.label,
                    target=m.target.label, morphism=m.to_json(),
                    classify=classify(m))

    def run_cat(self, action, options):
        if action == 'bf-iso':
            identity = self.extension(self.scenario, 'identity')
            bf = self.extension(self.scenario, 'bf')
            m = ExtMorphism(identity, bf, range(len(identity.domain)),
                            [bf.correction_indices[i]
                             for i in range(len(identity.domain))])
            m.verify('BF isomorphism')
            result = self.morphism_artifact(m)
            result['inverse'] = inverse(m).to_json()
            result['ok'] = result['classify']['iso']

            return result

        if action == 'terminal':
            constructors = options.get('candidates') or \
                ['identity', 'retract', 'constant']
            candidates = [self.extension(self.scenario, name)
                          for name in constructors]
            domain = candidates[0].domain
            base = candidates[0].base
            nullext = make_null(base, candidates[0].embedding, vacuum_domain(
                base.lattice, candidates[0].embedding.target,
                domain.generators))
            report = terminal_check(candidates, nullext)
            report['ok'] = report['terminal']

            return report

        morphisms = [self.load_morphism(_read(path))
                     for path in options.get('inputs') or []]

        if not morphisms:
            raise InputError('cat %s needs an input morphism (--in).' %
                             action)

        if action == 'classify':
            return dict(classify=classify(morphisms[0]),
                        check=morphisms[0].check())

        if action == 'inverse':
            return self.morphism_artifact(inverse(morphisms[0]))

        if action == 'probe':
            report = embedding_probe(morphisms[0])
            report['ok'] = report['conservative']

            return report

        if action == 'compose':
            if len(morphisms) != 2:
                raise InputError('cat compose needs exactly two inputs, m1 '
                                 'then m2.')

            return self.morphism_artifact(compose(morphisms[1],
                                                  morphisms[0]))

        raise InputError('Unknown cat command %r.' % action)

    # Artifacts.

    def artifact(self, result):
        return dict(version=config.VERSION, command=self.command_line,
                    seed=self.scenario.seed, run_id=self.run_id,
                    result=result)

    def render(self, result):
        """Render a result in the chosen format.

        Results with columns and rows become CSV tables, everything else is
        written as JSON. CSV output starts with comment lines carrying the
        version, the command and the seed.
        """
        if self.fmt == 'csv':
            if 'rows' not in result:
                raise InputError('This command has no tabular output; use '
                                 '--format json.')

            buffer = io.StringIO()
            buffer.write('# version: %s\n# command: %s\n# seed: %d\n' %
                         (config.VERSION, self.command_line,
                          self.scenario.seed))
            writer = csv.writer(buffer, lineterminator='\n')
            writer.writerow(result['columns'])
            writer.writerows(result['rows'])

            return buffer.getvalue()

        return json.dumps(_plain(self.artifact(result)), sort_keys=True,
                          indent=2) + '\n'

    def dump(self, result, path=None, filename=None):
        """Save an artifact to file.

        Arguments:
            result: the command result.
            path: a file, or a directory (ending in /) to hold a run
                  directory named after the run id. config.OUTPUT_DIR by
                  default.
            filename: the file name inside the run directory.

        Returns: the path written.
        """
        text = self.render(result)

        if path is None:
            path = config.OUTPUT_DIR

        if path.endswith('/') or os.path.isdir(path):
            if path[-1] != '/':
                path += '/'

            path += self.run_id + '/'
            os.makedirs(path, exist_ok=True)
            fullpath = path + (filename if filename else
                               'result.%s' % self.fmt)
        else:
            directory = os.path.dirname(path)

            if directory:
                os.makedirs(directory, exist_ok=True)

            fullpath = path

        with open(fullpath, 'w') as f:
            f.write(text)

        log.print('Saved the result to: %s.', fullpath, Verbosity.MINIMAL)

        return fullpath

    def to_json(self):
        """Encode the workbench settings as JSON.

        Returns: the generated JSON.
        """
        return dict(
            run_id=self.run_id,
            scenario=self.scenario.to_json(),
            settings=dict(
                rank_threshold=LieAlgebra.rank_threshold,
                structure_tolerance=LieAlgebra.structure_tolerance,
                group_tolerance=LieAlgebra.group_tolerance,
                coherence_tolerance=CoherentEmbedding.coherence_tolerance,
                antisymmetry_tolerance=AlgebraCochain2.antisymmetry_tolerance,
                invariance_tolerance=YMTTheory.invariance_tolerance,
                extension_tolerance=Extension.tolerance,
                match_tolerance=SampledDomain.match_tolerance,
                max_domain_size=SampledDomain.max_size,
                root_precision=ScalarPolynomial.root_precision,
                root_separation=ScalarPolynomial.root_separation
            )
        )

    @staticmethod
    def from_json(config_, command_line='', fmt='json'):
        """Load a workbench from JSON.

        Arguments:
            config_: the JSON dictionary loaded from file.
            command_line: the command to echo.
            fmt: the output format.

        Returns: the Workbench.
        """
        scenario = Scenario.from_json(config_['scenario'])
        Workbench.set_config(config_.get('settings', {}))
        workbench = Workbench(scenario, command_line, fmt)
        workbench.run_id = config_.get('run_id', workbench.run_id)

        return workbench

    @staticmethod
    def set_config(settings):
        """Set the tunables of the workbench.

        Arguments:
            settings: A dictionary containing the key-value pairs for the
                      tunables. Missing keys keep their current values.

        Throws: InputError for unknown keys.
        """
        known = {'rank_threshold', 'structure_tolerance', 'group_tolerance',
                 'coherence_tolerance', 'antisymmetry_tolerance',
                 'invariance_tolerance', 'extension_tolerance',
                 'match_tolerance', 'max_domain_size', 'root_precision',
                 'root_separation'}
        unknown = set(settings) - known

        if unknown:
            raise InputError('Unknown settings: %s.' %
                             ', '.join(sorted(unknown)))

        LieAlgebra.rank_threshold = settings.get(
            'rank_threshold', LieAlgebra.rank_threshold)
        LieAlgebra.structure_tolerance = settings.get(
            'structure_tolerance', LieAlgebra.structure_tolerance)
        LieAlgebra.group_tolerance = settings.get(
            'group_tolerance', LieAlgebra.group_tolerance)
        CoherentEmbedding.coherence_tolerance = settings.get(
            'coherence_tolerance', CoherentEmbedding.coherence_tolerance)
        AlgebraCochain2.antisymmetry_tolerance = settings.get(
            'antisymmetry_tolerance', AlgebraCochain2.antisymmetry_tolerance)
        YMTTheory.invariance_tolerance = settings.get(
            'invariance_tolerance', YMTTheory.invariance_tolerance)
        Extension.tolerance = settings.get('extension_tolerance',
                                           Extension.tolerance)
        SampledDomain.match_tolerance = settings.get(
            'match_tolerance', SampledDomain.match_tolerance)
        SampledDomain.max_size = settings.get('max_domain_size',
                                              SampledDomain.max_size)
        ScalarPolynomial.root_precision = settings.get(
            'root_precision', ScalarPolynomial.root_precision)
        ScalarPolynomial.root_separation = settings.get(
            'root_separation', ScalarPolynomial.root_separation)


def abelian_demo(seed):
    """The scalar polynomial of a u(1) theory with the unit pairing on a
    3 x 3 lattice. The bracket terms vanish, so p(t) = a (t^2 - t) and the
    roots are 0 and 1.
    """
    lattice = Lattice((3, 3))
    algebra = Algebras.u1()
    theory = YMTTheory(lattice, algebra, PairingSpec(lattice, algebra,
                                                     [[1.0]], label='unit'))
    d = AlgebraCochain1.random(lattice, algebra,
                               np.random.default_rng(seed))
    p = scalar_poly(theory, d)

    return dict(polynomial=p.to_json(), roots=_roots_json(invariance_roots(p)),
                algebra=algebra.name)


def _roots_json(roots):
    return roots if roots == ALL_REALS else [float(r) for r in roots]


def _parse_coefficients(text):
    """Parse "0:1,1:-1/2" into {0: 1, 1: -1/2}."""
    coefficients = {}

    try:
        for item in text.split(','):
            a, x = item.split(':')
            coefficients[int(a)] = to_exact(x.strip())
    except ValueError:
        raise InputError('Coefficients look like 0:1,1:-1/2, got %r.' % text)

    return coefficients


def _read(path):
    try:
        with open(path) as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        raise InputError('Could not read %s: %s' % (path, e))


def _plain(value):
    """Convert numpy scalars and tuples so that json.dumps accepts them."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}

    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]

    if isinstance(value, np.generic):
        return value.item()

    if isinstance(value, float) and not np.isfinite(value):
        return str(value)

    return value
