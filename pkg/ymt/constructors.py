"""Constructors of extensions, and the sampled domains they are built on."""
import numpy as np

from ymt.cochain import AlgebraCochain0, AlgebraCochain1, AlgebraCochain2
from ymt.domain import CONNECTION, CORRECTION, Configuration, SampledDomain, \
    gauge_generators
from ymt.errors import InputError, PreconditionError
from ymt.exact import ZERO, to_exact
from ymt.extension import Extension, require_invariant
from ymt.higgs import QuarticPotential, higgs_correction, parallel_residual, \
    theta_field
from ymt.lie import GroupEmbedding
from ymt.links import LinkField
from ymt.pairing import PairingSpec
from ymt.theory import ParameterizedTheory, YMTTheory, wrap_parameterized
from ymt.verbosity import Verbosity, log

# Exact elements of the normalizer of the embedded subgroup that are not in
# it. Gauge transforms by them keep the parallel set of a Higgs vacuum.
NORMALIZERS = {
    'so2->so3': [np.diag([1., -1., -1.])],
    'u1->su2': [np.array([[0, 1], [-1, 0]], dtype=complex)],
}

# Residual below which a connection counts as parallel for a Higgs vacuum.
PARALLEL_TOLERANCE = 1e-9


def _check_setting(base, embedding, domain):
    if embedding.source != base.algebra:
        raise InputError('The embedding starts at %s but the theory is over '
                         '%s.' % (embedding.source.name, base.algebra.name))

    for configuration in domain:
        if configuration.algebra != embedding.target or \
                configuration.lattice != base.lattice:
            raise InputError('The domain must hold %s configurations on %r.'
                             % (embedding.target.name, base.lattice))


def _actions(base, domain, indices=None):
    return domain.evaluate(lambda c: base.ymt_action(c.links), indices)


def _vacuum(domain):
    vacuum = domain.vacuum_indices()

    if not vacuum:
        raise InputError('The domain holds no vacuum configuration.')

    return vacuum


def connection_domain(lattice, algebra, rng, seeds=8, scale=0.3,
                      generators=None, local_at=None):
    """Sample links and close them under gauge generators.

    Arguments:
        lattice: the Lattice.
        algebra: the LieAlgebra.
        rng: a numpy Generator.
        seeds: the number of random link fields; the vacuum is added.
        scale: the coefficient scale of the random links.
        generators: GaugeTransforms; by default constant transforms by the
                    algebra's finite generators.
        local_at: a vertex at which to add a local generator.

    Returns: the closed SampledDomain, every point tagged as a connection.
    """
    if generators is None:
        generators = gauge_generators(lattice, algebra, local_at=local_at)

    links = [LinkField.identity(lattice, algebra)] + \
        [LinkField.random(lattice, algebra, rng, scale)
         for _ in range(seeds)]

    return SampledDomain.orbit_closure([Configuration(u) for u in links],
                                       generators)


def make_null(base, embedding, domain):
    """The null extension: S-hat = 0, C = 0 and delta the vacuum, on the
    vacuum configurations of the domain.
    """
    _check_setting(base, embedding, domain)
    vacuum = _vacuum(domain)
    zero = LinkField.identity(base.lattice, embedding.source)
    value = base.ymt_action(zero)

    return Extension(base, embedding, domain, vacuum, [ZERO] * len(domain),
                     [ZERO] * len(vacuum), [value] * len(vacuum),
                     [zero] * len(vacuum), label='null')


def make_identity(base, domain):
    """S^G as a complete extension of itself along the identity.

    Throws: PreconditionError if S^G is not invariant under the domain
            generators.
    """
    embedding = GroupEmbedding.identity(base.algebra)
    _check_setting(base, embedding, domain)
    values = _actions(base, domain)
    require_invariant(values, domain, 'The action of %s' % base.label)
    everything = list(range(len(domain)))

    return Extension(base, embedding, domain, everything, values,
                     [ZERO] * len(domain), values,
                     [c.links for c in domain], label='identity')


def make_constant(base, embedding, domain, c, d0=None, correction=None):
    """The constant extension S-hat = S^G[d0] + c, C = c, delta = d0.

    Arguments:
        c: the constant, any real.
        d0: a G LinkField; the vacuum by default.
        correction: domain indices of the correction subset; the whole
                    domain by default.
    """
    _check_setting(base, embedding, domain)

    if d0 is None:
        d0 = LinkField.identity(base.lattice, embedding.source)

    if correction is None:
        correction = list(range(len(domain)))

    c = to_exact(c)
    s0 = to_exact(base.ymt_action(d0))

    return Extension(base, embedding, domain, correction,
                     [s0 + c] * len(domain), [c] * len(correction),
                     [s0] * len(correction), [d0] * len(correction),
                     label='constant(%s)' % c)


def make_retract(base, domain, r):
    """S-hat = S^G o r for an equivariant retraction r onto the connections.

    Arguments:
        base: a gauge invariant YMTTheory.
        domain: the SampledDomain, over the same group as base.
        r: a list mapping each domain index to a connection index, or a
           function taking a Configuration to a Configuration.

    Throws: InputError if r is not the identity on connections, leaves
            them, or is not equivariant. PreconditionError if S^G is not
            gauge invariant.
    """
    embedding = GroupEmbedding.identity(base.algebra)
    _check_setting(base, embedding, domain)

    if callable(r):
        r = [domain.index_of(r(c)) for c in domain]

    r = list(r)
    connections = domain.connection_indices()

    if len(r) != len(domain) or any(j is None for j in r):
        raise InputError('The retraction must send every point into the '
                         'domain.')

    if any(r[i] != i for i in connections):
        raise InputError('The retraction is not the identity on '
                         'connections.')

    if set(r) - set(connections):
        raise InputError('The retraction leaves the connections.')

    for k, table in enumerate(domain.action_tables):
        for i in range(len(domain)):
            if r[table[i]] != table[r[i]]:
                raise InputError('The retraction is not equivariant under '
                                 'generator %d at point %d.' % (k, i))

    values = _actions(base, domain, connections)
    by_index = dict(zip(connections, values))
    s_hat = [by_index[r[i]] for i in range(len(domain))]
    require_invariant(s_hat, domain, 'The action of %s' % base.label)

    return Extension(base, embedding, domain, connections, s_hat,
                     [ZERO] * len(connections), values,
                     [domain[i].links for i in connections],
                     label='retract')


def graph_domain(domain, off_graph=False):
    """The curvature graph {(D, F_D)} of a domain of connections.

    Arguments:
        domain: a SampledDomain of bare connections.
        off_graph: also add the points (D, 0) for curved D, tagged as
                   extended only.

    Returns: the SampledDomain with the graph points first, in the order of
             domain, tagged as connections and correction points.
    """
    configurations = [Configuration(c.links, c.links.plaquette_curvature())
                      for c in domain]
    tags = [{CONNECTION, CORRECTION}] * len(configurations)

    if off_graph:
        for c, on_graph in zip(domain, list(configurations)):
            # Flat connections already sit on the graph at (D, 0).
            if on_graph.b.is_zero(SampledDomain.match_tolerance):
                continue

            zero = AlgebraCochain2.zeros(c.lattice, c.algebra)
            configurations.append(Configuration(c.links, zero))
            tags.append(set())

    return SampledDomain(configurations, tags, domain.generators)


def make_bf(base, domain):
    """The BF extension S-hat(D, B) = <<F_D, B>> with delta(D, B) = D on the
    curvature graph.

    Throws: InputError unless the lattice is 4 dimensional, every point
            carries a B field and every correction point lies on the graph.
    """
    if base.lattice.n != 4:
        raise InputError('BF theory needs a 4 dimensional lattice.')

    embedding = GroupEmbedding.identity(base.algebra)
    _check_setting(base, embedding, domain)

    if any(c.b is None for c in domain):
        raise InputError('Every point of a BF domain needs a B field.')

    correction = domain.indices_with(CORRECTION)

    for i in correction:
        curvature = domain[i].links.plaquette_curvature()

        if not domain[i].b.allclose(curvature,
                                    SampledDomain.match_tolerance):
            raise InputError('Correction point %d is off the curvature '
                             'graph: B differs from F_D.' % i)

    s_hat = domain.evaluate(lambda c: base.bf_action(c.links, c.b))
    require_invariant(s_hat, domain, 'The BF action')
    values = _actions(base, domain, correction)

    return Extension(base, embedding, domain, correction, s_hat,
                     [ZERO] * len(correction), values,
                     [domain[i].links for i in correction], label='bf')


def higgs_domain(lattice, coherent, rng, seeds=3, scale=0.3, bare=1):
    """Sample Higgs pairs (D, phi) with phi from theta, plus bare links.

    The vacuum is paired with a random theta field. Constant transforms by
    the target's finite generators close the set.

    Returns: the SampledDomain; pairs are tagged as correction points.
    """
    algebra = coherent.target
    generators = gauge_generators(lattice, algebra)

    def angles():
        return rng.uniform(0, 2 * np.pi, size=tuple(lattice.shape) + (2,))

    links = [LinkField.identity(lattice, algebra)] + \
        [LinkField.random(lattice, algebra, rng, scale) for _ in range(seeds)]
    configurations = [Configuration(u, phi=theta_field(coherent, lattice,
                                                        angles()))
                      for u in links]
    tags = [{CORRECTION}] * len(configurations)

    for _ in range(bare):
        configurations.append(Configuration(
            LinkField.random(lattice, algebra, rng, scale)))
        tags.append({CONNECTION})

    return SampledDomain.orbit_closure(configurations, generators, tags)


def make_higgs(base, coherent, domain, potential=None, rng=None):
    """The Higgs extension over the identity of G-hat.

    On the pairs (D, phi) of the domain, C(D, phi) = <<nabla phi,
    nabla phi>> + V(phi), delta(D, phi) = D and S-hat = S^G(D) + C. Bare
    connections get S-hat = S^G.

    Arguments:
        base: the YMTTheory over G-hat.
        coherent: the CoherentEmbedding providing theta.
        domain: the SampledDomain.
        potential: V, the quartic potential by default.
        rng: the Generator for the coherence check.

    Throws: PreconditionError if theta is not coherent.
    """
    if coherent.target != base.algebra:
        raise InputError('theta takes values in %s, the theory is over %s.'
                         % (coherent.target.name, base.algebra.name))

    coherent.check_coherence(rng if rng is not None
                             else np.random.default_rng(0))

    if potential is None:
        potential = QuarticPotential()

    embedding = GroupEmbedding.identity(base.algebra)
    _check_setting(base, embedding, domain)
    correction = [i for i, c in enumerate(domain) if c.phi is not None]
    actions = [to_exact(v) for v in _actions(base, domain)]
    corrections = [to_exact(v) for v in domain.evaluate(
        lambda c: higgs_correction(base, c, potential), correction)]
    s_hat = list(actions)

    for i, c in zip(correction, corrections):
        s_hat[i] = actions[i] + c

    require_invariant(s_hat, domain, 'The Higgs action')

    return Extension(base, embedding, domain, correction, s_hat, corrections,
                     [actions[i] for i in correction],
                     [domain[i].links for i in correction], label='higgs')


def higgs_vacuum_domain(lattice, embedding, rng, parallel=3, generic=2,
                        scale=0.3, local_at=None):
    """Sample links for a Higgs vacuum: embedded G links, which are parallel
    for the embedded generator, and generic G-hat links.

    The generators are constant transforms by the embedded finite generators
    and the exact normalizer elements, plus a local one at local_at.
    """
    source, target = embedding.source, embedding.target
    elements = [embedding.embed_group(g) for g in source.finite_generators]
    elements += NORMALIZERS.get(embedding.name, [])
    generators = gauge_generators(lattice, target, elements)

    if local_at is not None and elements:
        generators += gauge_generators(lattice, target, [elements[0]],
                                       local_at)[1:]

    links = [LinkField.identity(lattice, target)]
    links += [LinkField.random(lattice, source, rng, scale).embed(embedding)
              for _ in range(parallel)]
    links += [LinkField.random(lattice, target, rng, scale)
              for _ in range(generic)]

    return SampledDomain.orbit_closure([Configuration(u) for u in links],
                                       generators)


def reduce_links(links, embedding):
    """delta for a Higgs vacuum: exp_G of the projection of log U onto the
    embedded algebra, edge by edge.
    """
    coefficients = embedding.reduce_algebra(links.log().values)

    return AlgebraCochain1(links.lattice, embedding.source,
                           coefficients).exp()


def induced_theory(base, embedding):
    """The theory over G-hat pairing curvatures through the projection P
    onto the embedded algebra, B-hat = P^T B P.
    """
    p = embedding.projection()
    forms = np.einsum('ai,...ab,bj->...ij', p, base.pairing.site_forms, p)
    lattice = base.lattice

    if base.pairing.position_dependent:
        algebra_form = {x: forms[x] for x in lattice.vertices()}
    else:
        algebra_form = forms.reshape(-1, embedding.target.dim,
                                     embedding.target.dim)[0]

    pairing = PairingSpec(lattice, embedding.target, algebra_form,
                          base.pairing.form2, label='induced(%s)' %
                          base.pairing.label)

    return YMTTheory(lattice, embedding.target, pairing,
                     label='induced(%s)' % base.label)


def make_higgs_vacuum(base, embedding, domain, phi0=None, correction=None):
    """The extension given by a Higgs vacuum phi0.

    The correction subset is the set of connections along which phi0 is
    parallel; delta reduces them to G. S-hat pairs G-hat curvatures through
    the projection onto the embedded algebra, plus C.

    Arguments:
        base: the YMTTheory over G.
        embedding: the GroupEmbedding G -> G-hat.
        domain: a SampledDomain of G-hat connections.
        phi0: an AlgebraCochain0 over G-hat; the constant embedded
              generator by default.
        correction: a gauge invariant function of a Configuration, zero by
                    default.

    Throws: PreconditionError if no connection of the domain is parallel.
    """
    _check_setting(base, embedding, domain)
    lattice = base.lattice

    if phi0 is None:
        phi0 = AlgebraCochain0.constant(lattice, embedding.target,
                                        embedding.algebra_map[:, 0])

    parallel = [i for i, c in enumerate(domain)
                if parallel_residual(c.links, phi0) <= PARALLEL_TOLERANCE]

    log.print('%d of %d connections are parallel for the Higgs vacuum.',
              (len(parallel), len(domain)), Verbosity.FULL)

    if not parallel:
        raise PreconditionError('No connection of the domain keeps the Higgs '
                                'vacuum parallel.')

    induced = induced_theory(base, embedding)
    values_c = [to_exact(correction(c)) if correction is not None else ZERO
                for c in domain]
    s_hat = [to_exact(v) + c for v, c in
             zip(domain.evaluate(lambda c: induced.ymt_action(c.links)),
                 values_c)]
    require_invariant(s_hat, domain, 'The induced action')
    delta = [reduce_links(domain[i].links, embedding) for i in parallel]

    return Extension(base, embedding, domain, parallel, s_hat,
                     [values_c[i] for i in parallel],
                     [base.ymt_action(u) for u in delta], delta,
                     label='higgs-vacuum')


def make_background(base, domain, coupling, section=None):
    """A background field s minimally coupled to S^G:
    S-hat = S^G + C(., s), delta = id, C = C(., s).

    Arguments:
        base: a gauge invariant YMTTheory.
        domain: a SampledDomain over the group of base.
        coupling: a function (Configuration, section) -> real.
        section: the background field passed to coupling.

    Throws: PreconditionError if the coupling is not gauge invariant.
    """
    embedding = GroupEmbedding.identity(base.algebra)
    _check_setting(base, embedding, domain)
    couplings = domain.evaluate(lambda c: coupling(c, section))
    require_invariant(couplings, domain, 'The background coupling')
    actions = _actions(base, domain)
    require_invariant(actions, domain, 'The action of %s' % base.label)
    couplings = [to_exact(v) for v in couplings]
    actions = [to_exact(v) for v in actions]

    return Extension(base, embedding, domain, list(range(len(domain))),
                     [a + c for a, c in zip(actions, couplings)], couplings,
                     actions, [c.links for c in domain], label='background')


def rescaled(links, factor):
    """exp(factor log U) on every edge."""
    return (factor * links.log()).exp()


def emergence_to_extension(s1, s2, fmap, gmap, domain, eps0=None):
    """The complete extension of S^G induced by a strong emergence of
    theories.

    The identity S_{2,F(eps)}(beta) = S_{1,eps}(G(beta)) must hold for every
    parameter eps of s1 and every beta in the domain. Then S-hat = S_{2,
    F(eps0)}, delta = G and C = 0.

    Arguments:
        s1: the ParameterizedTheory wrapping S^G.
        s2: the ParameterizedTheory being compared with it.
        fmap: the parameter map F, a dict or function.
        gmap: G, a function from Configurations of the domain to G
              LinkFields.
        domain: the SampledDomain of configurations of s2.
        eps0: the parameter defining S-hat, the first of s1 by default.

    Throws: PreconditionError naming the worst sample if the identity
            fails, InputError if s1 has no parameters.
    """
    if not s1.parameter_set:
        raise InputError('%s has no parameters to compare at.' % s1.label)

    f = fmap.get if isinstance(fmap, dict) else fmap
    base = s1.base
    embedding = GroupEmbedding.identity(s2.base.algebra)

    if s2.base.algebra != base.algebra:
        raise InputError('Emergence needs theories over the same group.')

    _check_setting(base, embedding, domain)
    images = [gmap(c) for c in domain]
    worst = (0.0, None, None)
    scale = 1.0

    for eps in s1.parameter_set:
        for i, (c, image) in enumerate(zip(domain, images)):
            lhs = s2.evaluate(f(eps), c.links)
            rhs = s1.evaluate(eps, image)
            scale = max(scale, abs(lhs), abs(rhs))

            if abs(lhs - rhs) > worst[0]:
                worst = (abs(lhs - rhs), eps, i)

    if worst[0] > Extension.tolerance * scale:
        raise PreconditionError('The emergence identity fails at parameter '
                                '%r on point %d (deviation %.3g).' %
                                (worst[1], worst[2], worst[0]))

    if eps0 is None:
        eps0 = s1.parameter_set[0]

    s_hat = [s2.evaluate(f(eps0), c.links) for c in domain]
    require_invariant(s_hat, domain, 'The emerging action')

    return Extension(base, embedding, domain, list(range(len(domain))),
                     s_hat, [ZERO] * len(domain),
                     [base.ymt_action(u) for u in images], images,
                     label='emergence')


def wilson_coupling(configuration, section):
    """section * sum over plaquettes of Re tr(1 - U_p), gauge invariant for
    any gauge transform.
    """
    links = configuration.links
    total = 0.0

    for mu, nu in links.lattice.planes:
        holonomy = links.plaquette_holonomy(mu, nu)
        d = holonomy.shape[-1]
        total += float(np.sum(d - np.real(np.trace(holonomy, axis1=-2,
                                                   axis2=-1))))

    return float(section) * total


def rescaling_emergence(base, domain, factor=2, probe_seed=0):
    """The emergence of S^G from the family S_s(U) = S^G(exp(s log U)).

    S^G is wrapped with the single parameter 1, F(1) = factor and
    G(U) = exp(factor log U), so that S_F(1)(U) = S^G(G(U)) by
    construction.

    Returns: the complete Extension from emergence_to_extension.
    """
    s1 = wrap_parameterized(base, [1], seed=probe_seed)
    s2 = ParameterizedTheory(base, [factor],
                             lambda s, links: base.ymt_action(
                                 rescaled(links, s)),
                             label='rescaled(%s)' % base.label)

    return emergence_to_extension(s1, s2, {1: factor},
                                  lambda c: rescaled(c.links, factor), domain)
