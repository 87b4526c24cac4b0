"""The category of extensions of a YMT theory.

A morphism (f, g) from e1 to e2 is an equivariant map f of extended domains
and a map g of correction subsets with

    S-hat_2 o f = S-hat_1,   C_2 o g = C_1,   delta_2 o g = delta_1,
    f o j_1 = j_2 o g.

Both maps are stored as lists of domain indices: f[i] is the image of
domain point i, g[k] the image of the k-th correction point of e1.
"""
from ymt.constructors import connection_domain, graph_domain, make_bf, \
    make_constant, make_identity, make_null, make_retract
from ymt.domain import Configuration, SampledDomain
from ymt.errors import InputError, VerificationError
from ymt.extension import Extension, _same_theory
from ymt.lie import GroupEmbedding
from ymt.links import LinkField
from ymt.verbosity import Verbosity, log


class ExtMorphism:
    """A morphism of extensions, given by index maps."""

    def __init__(self, source, target, f, g, strict=False):
        """Create a morphism. Nothing is checked here, see check().

        Arguments:
            source: the Extension e1.
            target: the Extension e2.
            f: target domain indices, one per source domain point.
            g: target domain indices, one per source correction point.
            strict: whether g also has to be equivariant.
        """
        self.source = source
        self.target = target
        self.f = [int(i) for i in f]
        self.g = [int(i) for i in g]
        self.strict = bool(strict)

    def __repr__(self):
        return 'ExtMorphism(%s -> %s)' % (self.source.label,
                                          self.target.label)

    def _shape_failures(self):
        source, target = self.source, self.target
        failures = []

        if not _same_theory(source.base, target.base):
            failures.append('different base theories')

        if source.embedding != target.embedding:
            failures.append('different embeddings')

        if not source.domain.same_generators(target.domain):
            failures.append('different gauge generators')

        if len(self.f) != len(source.domain) or \
                any(j < 0 or j >= len(target.domain) for j in self.f):
            failures.append('f is not a map of the extended domains')

        correction = set(target.correction_indices)

        if len(self.g) != len(source.correction_indices) or \
                any(j not in correction for j in self.g):
            failures.append('g is not a map of the correction subsets')

        return failures

    def equivariance_failures(self):
        """Pairs (generator, point) at which f does not commute with the
        action tables.
        """
        failures = []

        for k, (s_table, t_table) in enumerate(zip(
                self.source.domain.action_tables,
                self.target.domain.action_tables)):
            for i, j in enumerate(s_table):
                if self.f[j] != t_table[self.f[i]]:
                    failures.append((k, i))

        return failures

    def g_equivariance_failures(self):
        source, target = self.source, self.target
        failures = []

        for k, (s_table, t_table) in enumerate(zip(
                source.domain.action_tables, target.domain.action_tables)):
            for p, i in enumerate(source.correction_indices):
                q = source.correction_position(s_table[i])

                if q is not None and self.g[q] != t_table[self.g[p]]:
                    failures.append((k, i))

        return failures

    def triangles(self):
        """The residual of each commuting triangle, with the worst point.

        Returns: a dict of s_hat, correction, delta and inclusion entries,
                 each a dict with residual and point.
        """
        source, target = self.source, self.target
        report = {}

        def worst(pairs):
            residual, point = 0.0, None

            for index, (a, b) in pairs:
                difference = float(abs(a - b))

                if difference > residual:
                    residual, point = difference, index

            return dict(residual=residual, point=point)

        report['s_hat'] = worst((i, (target.s_hat[j], source.s_hat[i]))
                                for i, j in enumerate(self.f))

        positions = [target.correction_position(j) for j in self.g]
        report['correction'] = worst(
            (source.correction_indices[k], (target.correction[q],
                                            source.correction[k]))
            for k, q in enumerate(positions))
        report['delta'] = worst(
            (source.correction_indices[k], (target.base_values[q],
                                            source.base_values[k]))
            for k, q in enumerate(positions))

        if source.delta is not None and target.delta is not None:
            mismatched = [source.correction_indices[k]
                          for k, q in enumerate(positions)
                          if not target.delta[q].allclose(
                              source.delta[k], SampledDomain.match_tolerance)]

            if mismatched:
                report['delta'] = dict(residual=float('inf'),
                                       point=mismatched[0])

        inclusion = [i for k, i in enumerate(source.correction_indices)
                     if self.f[i] != self.g[k]]
        report['inclusion'] = dict(residual=float(len(inclusion)),
                                   point=inclusion[0] if inclusion else None)

        return report

    def check(self, triangles=('s_hat', 'correction', 'delta', 'inclusion')):
        """Verify that (f, g) is a morphism.

        Arguments:
            triangles: the commuting conditions to enforce; the others are
                       still reported.

        Returns: a dict with ok, failures and the triangle residuals.
        """
        failures = self._shape_failures()

        if failures:
            return dict(ok=False, failures=failures, triangles=None)

        equivariance = self.equivariance_failures()

        if equivariance:
            failures.append('f is not equivariant (generator %d, point %d)' %
                            equivariance[0])

        if self.strict:
            g_failures = self.g_equivariance_failures()

            if g_failures:
                failures.append('g is not equivariant (generator %d, point '
                                '%d)' % g_failures[0])

        report = self.triangles()
        scale = max([1.0] + [abs(float(v)) for v in self.source.s_hat])

        for name in triangles:
            tolerance = 0.5 if name == 'inclusion' \
                else Extension.tolerance * scale

            if report[name]['residual'] > tolerance:
                failures.append('%s triangle fails at point %s (residual '
                                '%.3g)' % (name, report[name]['point'],
                                           report[name]['residual']))

        return dict(ok=not failures, failures=failures, triangles=report)

    def verify(self, what='morphism'):
        """Throws: VerificationError if check() fails."""
        report = self.check()

        if not report['ok']:
            raise VerificationError('The %s %r fails: %s.' %
                                    (what, self, '; '.join(report['failures'])
                                     ))

        return self

    def to_json(self):
        return dict(source=self.source.label, target=self.target.label,
                    f=[[i, j] for i, j in enumerate(self.f)],
                    g=[[i, j] for i, j in zip(self.source.correction_indices,
                                              self.g)],
                    strict=self.strict)

    @staticmethod
    def from_json(config, source, target):
        """Load a morphism from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            source: the source Extension.
            target: the target Extension.

        Returns: the ExtMorphism.
        """
        f = dict((int(i), int(j)) for i, j in config['f'])
        g = dict((int(i), int(j)) for i, j in config['g'])

        if set(f) != set(range(len(source.domain))) or \
                set(g) != set(source.correction_indices):
            raise InputError('The morphism does not cover its source.')

        return ExtMorphism(source, target,
                           [f[i] for i in range(len(source.domain))],
                           [g[i] for i in source.correction_indices],
                           config.get('strict', False))


def identity_morphism(e):
    return ExtMorphism(e, e, range(len(e.domain)), e.correction_indices)


def compose(m2, m1):
    """The composite m2 o m1, computed componentwise and re-verified.

    Throws: InputError if m1 does not end where m2 starts,
            VerificationError if the composite fails its checks.
    """
    if m1.target is not m2.source:
        raise InputError('Cannot compose %r after %r.' % (m2, m1))

    f = [m2.f[j] for j in m1.f]
    positions = [m2.source.correction_position(j) for j in m1.g]
    g = [m2.g[q] for q in positions]

    return ExtMorphism(m1.source, m2.target, f, g,
                       m1.strict and m2.strict).verify('composite')


def _injective(values):
    return len(set(values)) == len(values)


def classify(m):
    """Decide whether a morphism is mono, epi or iso: (f, g) is mono when
    both maps are injective and epi when both are surjective.
    """
    f_injective = _injective(m.f)
    g_injective = _injective(m.g)
    f_surjective = set(m.f) == set(range(len(m.target.domain)))
    g_surjective = set(m.g) == set(m.target.correction_indices)
    mono = f_injective and g_injective
    epi = f_surjective and g_surjective

    return dict(mono=mono, epi=epi, iso=mono and epi)


def _inverse_maps(m):
    f = [0] * len(m.f)
    g = [0] * len(m.g)

    for i, j in enumerate(m.f):
        f[j] = i

    for k, j in enumerate(m.g):
        g[m.target.correction_indices.index(j)] = \
            m.source.correction_indices[k]

    return ExtMorphism(m.target, m.source, f, g, m.strict)


def inverse(m):
    """The two-sided inverse of an isomorphism.

    Throws: InputError if m is not an isomorphism, VerificationError if the
            inverse maps fail the morphism checks.
    """
    if not classify(m)['iso']:
        raise InputError('%r is not an isomorphism.' % m)

    return _inverse_maps(m).verify('inverse')


def bf_identity_iso(base, domain):
    """The isomorphism from the identity extension to the BF extension on
    the curvature graph, f = g = (D -> (D, F_D)).

    Arguments:
        base: a gauge invariant YMTTheory on a 4 dimensional lattice.
        domain: a SampledDomain of bare connections.

    Returns: the verified ExtMorphism.
    """
    if base.lattice.n != 4:
        raise InputError('BF theory needs a 4 dimensional lattice.')

    identity = make_identity(base, domain)
    bf = make_bf(base, graph_domain(domain))

    diagonal = list(range(len(domain)))

    return ExtMorphism(identity, bf, diagonal,
                       [bf.correction_indices[i] for i in diagonal]
                       ).verify('BF isomorphism')


# Conditions enforced when testing for terminality. The S-hat and delta
# triangles are reported alongside.
TERMINAL_TRIANGLES = ('correction', 'inclusion')


def _orbit_assignments(source, target, orbit, t):
    """Extend f(orbit[0]) = t equivariantly over an orbit.

    Returns: the assignment dict, or None on a conflict.
    """
    assignment = {orbit[0]: t}
    queue = [orbit[0]]

    while queue:
        i = queue.pop(0)

        for s_table, t_table in zip(source.domain.action_tables,
                                    target.domain.action_tables):
            j, image = s_table[i], t_table[assignment[i]]

            if j in assignment:
                if assignment[j] != image:
                    return None
            else:
                assignment[j] = image
                queue.append(j)

    return assignment


def _admissible(source, target, assignment):
    # The correction and inclusion triangles force g = f on correction
    # points, which must land on correction points with equal C.
    for i, j in assignment.items():
        p = source.correction_position(i)

        if p is None:
            continue

        q = target.correction_position(j)

        if q is None:
            return 'inclusion'

        if abs(float(target.correction[q] - source.correction[p])) > \
                Extension.tolerance * max(1.0, abs(float(
                    source.correction[p]))):
            return 'correction'

    return None


def count_morphisms(source, target):
    """Count the maps (f, g) satisfying the terminal conditions.

    f is chosen orbit by orbit; each choice of image for an orbit
    representative extends in at most one way.

    Returns: a dict with count, one witness morphism (if any) and the
             constraint that ruled out the most candidates.
    """
    orbits = source.domain.orbits()
    count = 1
    f = [None] * len(source.domain)
    obstructions = {}

    for orbit in orbits:
        admissible = []

        for t in range(len(target.domain)):
            assignment = _orbit_assignments(source, target, orbit, t)

            if assignment is None:
                obstructions['equivariance'] = \
                    obstructions.get('equivariance', 0) + 1
                continue

            reason = _admissible(source, target, assignment)

            if reason:
                obstructions[reason] = obstructions.get(reason, 0) + 1
                continue

            admissible.append(assignment)

        count *= len(admissible)

        if not admissible:
            break

        for i, j in admissible[0].items():
            f[i] = j

    witness = None

    if count:
        g = [f[i] for i in source.correction_indices]
        witness = ExtMorphism(source, target, f, g)

    obstruction = max(obstructions, key=obstructions.get) \
        if obstructions and not count else None

    return dict(count=count, witness=witness, obstruction=obstruction)


def terminal_check(candidates, nullext):
    """Test whether nullext receives exactly one morphism from every
    candidate.

    Morphisms into nullext are counted with f equivariant and the
    correction and inclusion squares commuting. The S-hat and delta
    triangles of the witness are reported but not enforced. Candidates
    with a nonzero correction functional cannot map to nullext and are
    reported as obstructed without deciding terminality.

    Returns: a dict with terminal and one witness entry per candidate.
    """
    witnesses = []
    terminal = True

    for e in candidates:
        entry = dict(label=e.label, complete=e.complete)

        if not _same_theory(e.base, nullext.base) or \
                e.embedding != nullext.embedding:
            entry.update(compatible=False, count=0)
            witnesses.append(entry)
            terminal = False
            continue

        if not e.domain.same_generators(nullext.domain):
            entry.update(compatible=False, count=0,
                         obstruction='generators')
            witnesses.append(entry)
            terminal = False
            continue

        counted = count_morphisms(e, nullext)
        entry.update(compatible=True, count=counted['count'],
                     unique=counted['count'] == 1,
                     obstruction=counted['obstruction'])

        if counted['witness'] is not None:
            report = counted['witness'].check(TERMINAL_TRIANGLES)
            entry['triangles'] = report['triangles']
            entry['f'] = counted['witness'].f

        if e.complete and counted['count'] != 1:
            terminal = False

        log.print('terminal check %s: %d morphisms', (e.label,
                                                      counted['count']),
                  Verbosity.FULL)
        witnesses.append(entry)

    return dict(terminal=terminal, witnesses=witnesses)


def vacuum_domain(lattice, algebra, generators=()):
    """The domain holding only the vacuum, e.g. for the null extension."""
    return SampledDomain([Configuration(LinkField.identity(lattice,
                                                           algebra))],
                         generators=list(generators))


def embedding_probe(m):
    """Map a morphism to the product of slices, sets over the reals (via
    S-hat and C) and sets over connections (via delta), and check the slice
    conditions.

    If the three images are bijections the morphism must be an isomorphism:
    the inverse maps are built and checked as a morphism of extensions.

    Returns: a dict with the slice verdicts, the first failing point of
             each, valid, bijective, iso, the inverse check when bijective,
             conservative and the failing point when it is not.
    """
    report = m.triangles()
    scale = max([1.0] + [abs(float(v)) for v in m.source.s_hat])
    tolerance = Extension.tolerance * scale
    slices = {}

    for name, triangle in [('values', 's_hat'), ('corrections', 'correction'),
                           ('connections', 'delta')]:
        entry = report[triangle]
        slices[name] = dict(ok=entry['residual'] <= tolerance,
                            point=entry['point'] if entry['residual'] >
                            tolerance else None,
                            residual=entry['residual'])

    f_bijective = _injective(m.f) and \
        len(m.f) == len(m.target.domain)
    g_bijective = _injective(m.g) and \
        len(m.g) == len(m.target.correction_indices)
    bijective = f_bijective and g_bijective
    result = dict(slices=slices, triple=dict(f=m.f, g=m.g, h=m.g),
                  valid=m.check()['ok'], bijective=bijective,
                  iso=classify(m)['iso'], conservative=True, point=None)

    if bijective:
        inverse_maps = _inverse_maps(m)
        checked = inverse_maps.check()
        result['inverse'] = dict(ok=checked['ok'],
                                 failures=checked['failures'])

        if not checked['ok']:
            result['conservative'] = False
            result['point'] = _failing_point(inverse_maps, checked)

            log.print('%r is bijective but its inverse fails: %s', (
                m, '; '.join(checked['failures'])), Verbosity.FULL)

    return result


def _failing_point(m, report):
    """The first point at which the morphism check of m fails."""
    equivariance = m.equivariance_failures()

    if equivariance:
        return equivariance[0][1]

    for name, entry in (report['triangles'] or {}).items():
        if any(failure.startswith(name + ' triangle')
               for failure in report['failures']):
            return entry['point']

    return None


def _assignment_fits(source, target, assignment, tolerance):
    # Every triangle is local to a point, so an orbit assignment can be
    # tested on its own.
    if _admissible(source, target, assignment):
        return False

    for i, j in assignment.items():
        if float(abs(target.s_hat[j] - source.s_hat[i])) > tolerance:
            return False

        p = source.correction_position(i)

        if p is None:
            continue

        q = target.correction_position(j)

        if float(abs(target.base_values[q] - source.base_values[p])) > \
                tolerance:
            return False

        if source.delta is not None and target.delta is not None and \
                not target.delta[q].allclose(source.delta[p],
                                             SampledDomain.match_tolerance):
            return False

    return True


def random_morphism(rng, source, target):
    """Draw a morphism from source to target, orbit by orbit, among the
    images that make every triangle commute.

    Returns: the ExtMorphism, or None if some orbit has no valid image or
             the extensions are incompatible.
    """
    if not _same_theory(source.base, target.base) or \
            source.embedding != target.embedding or \
            not source.domain.same_generators(target.domain):
        return None

    scale = max([1.0] + [abs(float(v)) for v in source.s_hat])
    tolerance = Extension.tolerance * scale
    f = [None] * len(source.domain)

    for orbit in source.domain.orbits():
        candidates = []

        for t in range(len(target.domain)):
            assignment = _orbit_assignments(source, target, orbit, t)

            if assignment is not None and \
                    _assignment_fits(source, target, assignment, tolerance):
                candidates.append(assignment)

        if not candidates:
            return None

        for i, j in candidates[rng.integers(0, len(candidates))].items():
            f[i] = j

    return ExtMorphism(source, target, f,
                       [f[i] for i in source.correction_indices])


def _gauge_extensions(rng, base):
    """Identity, retract, null and (in 4 dimensions) BF extensions on a
    domain closed under the gauge generators.
    """
    algebra = base.algebra
    embedding = GroupEmbedding.identity(algebra)
    domain = connection_domain(base.lattice, algebra, rng, seeds=2)
    extended = graph_domain(domain, off_graph=True)

    def on_graph(c):
        return Configuration(c.links, c.links.plaquette_curvature())

    extensions = [make_identity(base, domain),
                  make_null(base, embedding, domain),
                  make_retract(base, extended, on_graph)]

    if base.lattice.n == 4:
        extensions.append(make_bf(base, graph_domain(domain)))

    return extensions


def random_morphism_corpus(rng, count, base, domains=None, values=(0, 1)):
    """Random valid morphisms between constant and null extensions on small
    domains without generators, together with identity, retract, null and
    BF extensions on a domain closed under the gauge generators.

    Arguments:
        rng: a numpy Generator.
        count: how many morphisms to draw.
        base: the gauge invariant YMTTheory; the domains are drawn on its
              lattice.
        domains: a list of SampledDomains to use; a few random ones of sizes
                 1 to 4 and a gauge closed one are built when not given.
        values: the constants used for constant extensions.

    Returns: a list of ExtMorphism, each verified.
    """
    algebra = base.algebra
    embedding = GroupEmbedding.identity(algebra)
    extensions = []

    if domains is None:
        domains = []

        for size in range(1, 5):
            links = [LinkField.identity(base.lattice, algebra)] + \
                [LinkField.random(base.lattice, algebra, rng)
                 for _ in range(size - 1)]
            domains.append(SampledDomain([Configuration(u) for u in links]))

        extensions.extend(_gauge_extensions(rng, base))

    for domain in domains:
        extensions.append(make_null(base, embedding, domain))

        for c in values:
            extensions.append(make_constant(base, embedding, domain, c))

            vacuum = domain.vacuum_indices()
            others = [i for i in range(len(domain)) if i not in vacuum]

            if others:
                subset = vacuum + [int(i) for i in rng.choice(
                    others, size=rng.integers(0, len(others) + 1),
                    replace=False)]
                extensions.append(make_constant(base, embedding, domain, c,
                                                correction=sorted(subset)))

    morphisms = []

    while len(morphisms) < count:
        source, target = (extensions[i] for i in
                          rng.integers(0, len(extensions), size=2))
        m = random_morphism(rng, source, target)

        if m is not None and m.check()['ok']:
            morphisms.append(m)

    log.print('drew %d morphisms over %d extensions', (count,
                                                       len(extensions)),
              Verbosity.FULL)

    return morphisms
