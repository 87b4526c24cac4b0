"""Extensions of YMT theories and their algebra.

An extension of S^G along G -> G-hat is a functional S-hat on a sampled
domain of G-hat configurations, a correction subset containing a vacuum, a
correction functional C and a map delta from the correction subset to G
configurations such that

    S-hat(beta) = S^G(delta(beta)) + C(beta)    on the correction subset.

All value tables are exact rationals so sums, group actions and module
operations satisfy their laws exactly.
"""
from ymt.domain import CONNECTION
from ymt.errors import InputError, PreconditionError, VerificationError
from ymt.exact import ZERO, exact_table, max_abs_difference, table_from_json, \
    table_to_json, to_exact
from ymt.group_ring import GroupRingElement
from ymt.verbosity import Verbosity, log


class Extension:
    """An extension of a YMT theory on a sampled domain.

    Tables:
        s_hat:        one value per domain index.
        correction:   one value per correction index, in the order of
                      correction_indices.
        base_values:  S^G(delta(beta)) per correction index. Group actions
                      act on this composite, so it survives when delta itself
                      cannot be carried along.
        delta:        a G LinkField per correction index, or None once the
                      map is only known through base_values.
    """

    # Relative tolerance for decomposition and gauge residuals.
    tolerance = 1e-9

    def __init__(self, base, embedding, domain, correction_indices, s_hat,
                 correction, base_values, delta=None, full=None,
                 label=None):
        """Create an extension. Flags that follow from the data are derived.

        Arguments:
            base: the YMTTheory S^G.
            embedding: the GroupEmbedding G -> G-hat.
            domain: the SampledDomain of G-hat configurations.
            correction_indices: domain indices of the correction subset.
            s_hat: values of S-hat over the domain.
            correction: values of C over the correction subset.
            base_values: values of S^G o delta over the correction subset.
            delta: G link fields over the correction subset, or None.
            full: whether the extended domain counts as the full space of
                  equivariant forms; by default when the correction subset
                  is the whole domain.
            label: a name for reports.

        Throws: InputError if the tables do not fit the domain.
        """
        correction_indices = [int(i) for i in correction_indices]

        if len(s_hat) != len(domain):
            raise InputError('S-hat has %d values for a domain of %d.' %
                             (len(s_hat), len(domain)))

        for name, table in [('correction', correction),
                            ('base_values', base_values)]:
            if len(table) != len(correction_indices):
                raise InputError('The %s table has %d values for %d '
                                 'correction points.' %
                                 (name, len(table), len(correction_indices)))

        if delta is not None and len(delta) != len(correction_indices):
            raise InputError('delta has %d values for %d correction points.'
                             % (len(delta), len(correction_indices)))

        if len(set(correction_indices)) != len(correction_indices) or \
                any(i < 0 or i >= len(domain) for i in correction_indices):
            raise InputError('Correction indices must be distinct domain '
                             'indices.')

        self.base = base
        self.embedding = embedding
        self.domain = domain
        self.correction_indices = correction_indices
        self.s_hat = exact_table(s_hat)
        self.correction = exact_table(correction)
        self.base_values = exact_table(base_values)
        self.delta = list(delta) if delta is not None else None
        self.label = label if label else 'extension'

        self.full = len(set(correction_indices)) == len(domain) \
            if full is None else bool(full)

    def __repr__(self):
        return 'Extension(%s, %d points, %d correction)' % (
            self.label, len(self.domain), len(self.correction_indices))

    @property
    def complete(self):
        return all(c == 0 for c in self.correction)

    @property
    def equivariant(self):
        """Whether the correction subset is closed under the generators."""
        return self.domain.is_closed_subset(self.correction_indices)

    @property
    def linear(self):
        return self.base.pairing.linear

    @property
    def flags(self):
        return dict(full=self.full, complete=self.complete,
                    equivariant=self.equivariant, linear=self.linear)

    def correction_position(self, index):
        """The position of a domain index in correction_indices, or None."""
        try:
            return self.correction_indices.index(index)
        except ValueError:
            return None

    def value(self, index):
        return self.s_hat[index]

    def _replace(self, s_hat, correction, base_values, delta, label):
        return Extension(self.base, self.embedding, self.domain,
                         self.correction_indices, s_hat, correction,
                         base_values, delta, self.full, label)

    def scale(self, r):
        """Multiply every table by the rational r.

        delta survives when r = 1 or when S^G vanishes along it.
        """
        r = to_exact(r)
        keep = r == 1 or all(v == 0 for v in self.base_values)

        return self._replace([r * v for v in self.s_hat],
                             [r * v for v in self.correction],
                             [r * v for v in self.base_values],
                             self.delta if keep else None,
                             '%s*%s' % (r, self.label))

    def negate(self):
        return self.scale(-1)

    def __neg__(self):
        return self.negate()

    def __add__(self, other):
        return add(self, other)

    def same_values(self, other):
        """Whether two extensions on the same domain agree table by table."""
        return self.domain is other.domain and \
            self.correction_indices == other.correction_indices and \
            self.s_hat == other.s_hat and \
            self.correction == other.correction and \
            self.base_values == other.base_values

    def to_json(self):
        """Encode the extension; the domain itself is described by the
        scenario it was built from.
        """
        return dict(label=self.label, base=self.base.to_json(),
                    embedding=self.embedding.name,
                    domain_size=len(self.domain),
                    correction_indices=list(self.correction_indices),
                    s_hat=table_to_json(self.s_hat),
                    correction=table_to_json(self.correction),
                    base_values=table_to_json(self.base_values),
                    delta='map' if self.delta is not None else 'composite',
                    flags=self.flags)

    @staticmethod
    def from_json(config, base, embedding, domain, delta=None):
        """Load an extension from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            base: the YMTTheory it extends.
            embedding: the GroupEmbedding.
            domain: the SampledDomain the tables refer to.
            delta: the delta map, if it should be attached.

        Returns: the Extension.
        """
        if config.get('domain_size', len(domain)) != len(domain):
            raise InputError('The extension was stored for a domain of %d '
                             'points, got %d.' % (config['domain_size'],
                                                  len(domain)))

        flags = config.get('flags', {})

        return Extension(base, embedding, domain,
                         config['correction_indices'],
                         table_from_json(config['s_hat']),
                         table_from_json(config['correction']),
                         table_from_json(config['base_values']),
                         delta if config.get('delta') == 'map' else None,
                         flags.get('full'), config.get('label'))


def _same_theory(t1, t2):
    return t1 is t2 or t1.to_json() == t2.to_json()


def check_extension(e):
    """Verify the invariants of an extension.

    Checks the decomposition S-hat = S^G o delta + C on the correction
    subset, the composite S^G o delta against delta itself when delta is a
    map, invariance of S-hat under the domain generators, that the
    correction subset holds a vacuum and that the domain holds connections.

    Returns: a dict with ok, the residuals and a list of failures.
    """
    tol = Extension.tolerance
    scale = max([1.0] + [abs(float(v)) for v in e.s_hat])
    failures = []

    decomposition = max((abs(e.s_hat[i] - v - c) for i, v, c in
                         zip(e.correction_indices, e.base_values,
                             e.correction)), default=ZERO)
    decomposition = float(decomposition)

    if decomposition > tol * scale:
        failures.append('decomposition residual %.3g' % decomposition)

    delta_residual = None

    if e.delta is not None:
        recomputed = [e.base.ymt_action(u) for u in e.delta]
        delta_residual = max_abs_difference(exact_table(recomputed),
                                            e.base_values)

        if delta_residual > tol * scale:
            failures.append('delta residual %.3g' % delta_residual)

    gauge = 0.0

    for table in e.domain.action_tables:
        gauge = max(gauge, max_abs_difference([e.s_hat[j] for j in table],
                                              e.s_hat))

    if gauge > tol * scale:
        failures.append('gauge residual %.3g' % gauge)

    vacuum = [i for i in e.correction_indices if e.domain[i].is_vacuum()]

    if not e.correction_indices:
        failures.append('empty correction subset')
    elif not vacuum:
        failures.append('no vacuum in the correction subset')

    if not e.domain.indices_with(CONNECTION):
        failures.append('no connections in the domain')

    if e.embedding.target != e.domain[0].algebra:
        failures.append('domain is over %s, not %s' %
                        (e.domain[0].algebra.name, e.embedding.target.name))

    log.print('check %s: decomposition %.3g, gauge %.3g', (
        e.label, decomposition, gauge), Verbosity.FULL)

    return dict(ok=not failures, failures=failures,
                residuals=dict(decomposition=decomposition, gauge=gauge,
                               delta=delta_residual, scale=scale),
                flags=e.flags, points=len(e.domain),
                correction_points=len(e.correction_indices))


def _verified(e, what):
    report = check_extension(e)

    if not report['ok']:
        raise VerificationError('The %s fails its checks: %s.' %
                                (what, '; '.join(report['failures'])))

    return e


def _check_compatible(e1, e2):
    if not _same_theory(e1.base, e2.base):
        raise InputError('The extensions extend different theories (%s and '
                         '%s).' % (e1.base.label, e2.base.label))

    if e1.embedding != e2.embedding:
        raise InputError('The extensions use different embeddings (%s and '
                         '%s).' % (e1.embedding.name, e2.embedding.name))


def add(e1, e2):
    """The sum of two compatible extensions.

    The result lives on the intersection of the two domains, which must
    hold every connection of both and be closed under the (shared)
    generators. Its correction subset is the intersection of the two
    correction subsets and must still hold a vacuum. All tables are added
    pointwise.

    Throws: InputError for incompatible extensions, VerificationError if the
            sum fails check_extension.
    """
    _check_compatible(e1, e2)

    if not e1.domain.same_generators(e2.domain):
        raise InputError('The domains of %s and %s are closed under '
                         'different generators.' % (e1.label, e2.label))

    if e1.domain is e2.domain:
        first = list(range(len(e1.domain)))
        second = first
    else:
        first, second = [], []

        for i, configuration in enumerate(e1.domain):
            j = e2.domain.index_of(configuration)

            if j is not None:
                first.append(i)
                second.append(j)

        for e, indices in [(e1, first), (e2, second)]:
            missing = set(e.domain.connection_indices()) - set(indices)

            if missing:
                raise InputError('The domain intersection misses %d '
                                 'connections of %s.' % (len(missing),
                                                         e.label))

        if not e1.domain.is_closed_subset(first):
            raise InputError('The domain intersection is not closed under '
                             'the generators.')

    domain = e1.domain if e1.domain is e2.domain \
        else e1.domain.sub_domain(first)
    positions = []

    for k, (i, j) in enumerate(zip(first, second)):
        p1 = e1.correction_position(i)
        p2 = e2.correction_position(j)

        if p1 is not None and p2 is not None:
            positions.append((k, p1, p2))

    if not any(domain[k].is_vacuum() for k, _, _ in positions):
        raise InputError('The correction subsets of %s and %s share no '
                         'vacuum.' % (e1.label, e2.label))

    delta = None

    if all(v == 0 for v in e2.base_values) and e1.delta is not None:
        delta = [e1.delta[p1] for _, p1, _ in positions]
    elif all(v == 0 for v in e1.base_values) and e2.delta is not None:
        delta = [e2.delta[p2] for _, _, p2 in positions]

    result = Extension(
        e1.base, e1.embedding, domain, [k for k, _, _ in positions],
        [e1.s_hat[i] + e2.s_hat[j] for i, j in zip(first, second)],
        [e1.correction[p1] + e2.correction[p2] for _, p1, p2 in positions],
        [e1.base_values[p1] + e2.base_values[p2]
         for _, p1, p2 in positions],
        delta, e1.full and e2.full, '(%s + %s)' % (e1.label, e2.label))

    return _verified(result, 'sum of %s and %s' % (e1.label, e2.label))


def act(action, a, e):
    """Pull an extension back along the action of a group element on the
    reals.

    On correction points S-hat, C and the composite S^G o delta are acted
    on; elsewhere S-hat is left alone.

    Arguments:
        action: an AdditiveAction.
        a: the group element.
        e: the Extension.

    Throws: PreconditionError if the action of a is not additive on the
            values involved, VerificationError if the result fails its
            checks.
    """
    values = list(e.correction) + list(e.base_values)
    action.check_additive(a, values)

    s_hat = list(e.s_hat)

    for i in e.correction_indices:
        s_hat[i] = action(a, s_hat[i])

    base_values = [action(a, v) for v in e.base_values]
    keep = e.delta is not None and base_values == list(e.base_values)

    result = e._replace(s_hat, [action(a, v) for v in e.correction],
                        base_values, e.delta if keep else None,
                        '%d.%s' % (a, e.label))

    return _verified(result, 'action of %d on %s' % (a, e.label))


def module_scalar(x, e, action=None):
    """The group ring element x acting on an extension,
    sum_a x_a (a acting on e).

    Arguments:
        x: a GroupRingElement.
        e: the Extension.
        action: the AdditiveAction; the one carried by x if not given.

    Returns: the Extension. The zero element gives zero tables on e's
             domain.
    """
    if not isinstance(x, GroupRingElement):
        raise InputError('Expected a group ring element, got %s.' %
                         type(x).__name__)

    if action is None:
        action = x.action

    if action is None:
        raise InputError('%r carries no action on the reals.' % x)

    if action.group != x.group:
        raise InputError('The action is for %r, not %r.' % (action.group,
                                                           x.group))

    result = None

    for a, coefficient in sorted(x.coefficients.items()):
        term = act(action, a, e).scale(coefficient)
        result = term if result is None else add(result, term)

    if result is None:
        return e.scale(0)

    return result


def restrict(e, sub):
    """Restrict an extension to a sub-domain.

    Arguments:
        e: the Extension.
        sub: a SampledDomain inside e.domain, or a list of indices of
             e.domain.

    Returns: the Extension on sub, with correction subset the part of e's
             inside sub.

    Throws: InputError if sub leaves e.domain, is not closed under the
            generators, drops connections or drops every vacuum.
    """
    if isinstance(sub, (list, tuple, range)):
        indices = [int(i) for i in sub]
    else:
        indices = []

        for configuration in sub:
            i = e.domain.index_of(configuration)

            if i is None:
                raise InputError('The sub-domain is not inside the domain of '
                                 '%s.' % e.label)

            indices.append(i)

        if not e.domain.same_generators(sub):
            raise InputError('The sub-domain has different generators.')

    if len(set(indices)) != len(indices) or \
            any(i < 0 or i >= len(e.domain) for i in indices):
        raise InputError('Sub-domain indices must be distinct indices of the '
                         'domain of %s.' % e.label)

    if not e.domain.is_closed_subset(indices):
        raise InputError('The sub-domain is not closed under the '
                         'generators.')

    if set(e.domain.connection_indices()) - set(indices):
        raise InputError('The sub-domain drops connections of %s.' % e.label)

    domain = sub if not isinstance(sub, (list, tuple, range)) \
        else e.domain.sub_domain(indices)
    positions = [(k, e.correction_position(i))
                 for k, i in enumerate(indices)
                 if e.correction_position(i) is not None]

    if not any(domain[k].is_vacuum() for k, _ in positions):
        raise InputError('The restriction of %s keeps no vacuum in its '
                         'correction subset.' % e.label)

    return Extension(e.base, e.embedding, domain,
                     [k for k, _ in positions],
                     [e.s_hat[i] for i in indices],
                     [e.correction[p] for _, p in positions],
                     [e.base_values[p] for _, p in positions],
                     [e.delta[p] for _, p in positions]
                     if e.delta is not None else None,
                     e.full and len(indices) == len(e.domain),
                     'restrict(%s)' % e.label)


def require_invariant(values, domain, what):
    """Check that a table of values is constant along the action tables.

    Throws: PreconditionError naming the worst generator and point.
    """
    exact = exact_table(values)
    scale = max([1.0] + [abs(float(v)) for v in exact])
    worst = (0.0, None, None)

    for k, table in enumerate(domain.action_tables):
        for i, j in enumerate(table):
            deviation = float(abs(exact[j] - exact[i]))

            if deviation > worst[0]:
                worst = (deviation, k, i)

    if worst[0] > Extension.tolerance * scale:
        raise PreconditionError('%s is not gauge invariant: generator %d '
                                'moves the value at point %d by %.3g.' %
                                (what, worst[1], worst[2], worst[0]))

    return worst[0]
