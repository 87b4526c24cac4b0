"""Pairings of algebra valued 2-cochains and adjoint structures."""
import numpy as np

from ymt.cochain import AlgebraCochain2
from ymt.errors import InputError
from ymt.lie import BilinearForm, LieAlgebra
from ymt.rank import fiber_rank


class PairingSpec:
    """A bilinear pairing of algebra valued 2-cochains.

    In the tensorial (linear) case the pairing is pointwise: at each vertex x
    it contracts the plaquette coefficients with form2 and the algebra
    coefficients with the algebra form at x, and the result is summed over
    vertices with the lattice volume weight. Otherwise an arbitrary
    functional of the two cochains is used.
    """

    def __init__(self, lattice, algebra, algebra_form=None, form2=None,
                 linear=True, functional=None, label=None):
        """Create a pairing.

        Arguments:
            lattice: the Lattice.
            algebra: the LieAlgebra.
            algebra_form: a BilinearForm, an l x l matrix, or a dict mapping
                          vertices to either, for position dependent forms.
                          Defaults to the Killing form.
            form2: the n_planes x n_planes matrix pairing plaquette
                   directions at the same vertex. Defaults to the identity.
            linear: whether the pairing is tensorial.
            functional: for non-tensorial pairings, a function of the two
                        cochains returning a real.
            label: a name for reports.
        """
        self.lattice = lattice
        self.algebra = algebra
        self.linear = bool(linear)
        self.functional = functional
        self.label = label if label else 'pairing'

        if not self.linear and functional is None:
            raise InputError('A non-tensorial pairing needs a functional.')

        if form2 is None:
            form2 = np.eye(lattice.n_planes)

        form2 = np.asarray(form2, dtype=float)

        if form2.shape != (lattice.n_planes, lattice.n_planes):
            raise InputError('form2 must be %dx%d, got %s.' %
                             (lattice.n_planes, lattice.n_planes,
                              form2.shape))

        self.form2 = form2

        if algebra_form is None:
            algebra_form = algebra.killing_form()

        if isinstance(algebra_form, dict):
            self.position_dependent = True
            site_forms = np.empty(tuple(lattice.shape) +
                                  (algebra.dim, algebra.dim))

            if len(algebra_form) != lattice.n_sites:
                raise InputError('A position dependent form needs a form at '
                                 'each of the %d vertices, got %d.' %
                                 (lattice.n_sites, len(algebra_form)))

            for x, form in algebra_form.items():
                site_forms[tuple(x)] = self._form_matrix(form)

            self.site_forms = site_forms
        else:
            self.position_dependent = False
            self.site_forms = np.broadcast_to(
                self._form_matrix(algebra_form),
                tuple(lattice.shape) + (algebra.dim, algebra.dim))

    def _form_matrix(self, form):
        if isinstance(form, BilinearForm):
            if form.algebra != self.algebra:
                raise InputError('The form lives on %s, not %s.' %
                                 (form.algebra.name, self.algebra.name))

            return form.matrix

        return BilinearForm(self.algebra, form).matrix

    @staticmethod
    def killing(lattice, algebra):
        """Euclidean on plaquettes times the Killing form."""
        return PairingSpec(lattice, algebra, algebra.killing_form(),
                           label='killing')

    def form_at(self, x):
        """The algebra form used at the vertex x."""
        return BilinearForm(self.algebra, self.site_forms[tuple(x)])

    def _check(self, w):
        if not isinstance(w, AlgebraCochain2) or w.lattice != self.lattice or \
                w.algebra != self.algebra:
            raise InputError('The pairing %s on %r (%s) cannot evaluate %s.' %
                             (self.label, self.lattice, self.algebra.name,
                              type(w).__name__ if not hasattr(w, 'lattice')
                              else '%s on %r (%s)' % (type(w).__name__,
                                                      w.lattice,
                                                      w.algebra.name)))

    def density(self, w1, w2):
        """The pointwise pairing of two 2-cochains at every vertex.

        Returns: an array of shape (*extents,).
        """
        if not self.linear:
            raise InputError('A non-tensorial pairing has no density.')

        self._check(w1)
        self._check(w2)

        return np.einsum('pq,p...i,...ij,q...j->...', self.form2,
                         w1.plane_values(), self.site_forms,
                         w2.plane_values())

    def evaluate(self, w1, w2):
        """The integrated pairing of two 2-cochains.

        Returns: a float.
        """
        if not self.linear:
            self._check(w1)
            self._check(w2)

            return float(self.functional(w1, w2))

        # Flattening in C order sums the cells lexicographically.
        density = self.density(w1, w2).reshape(-1)

        return float(np.sum(density)) * self.lattice.volume_weight

    def is_symmetric(self):
        if not self.linear:
            return False

        return bool(np.allclose(self.form2, self.form2.T, rtol=0,
                                atol=1e-12) and
                    np.allclose(self.site_forms,
                                np.swapaxes(self.site_forms, -1, -2),
                                rtol=0, atol=1e-12))

    def cochain_dim(self):
        return self.lattice.n_planes * self.lattice.n_sites * \
               self.algebra.dim

    def gram_matrix(self):
        """The matrix G with <w1, w2> = vec(w1)^T G vec(w2), where vec
        flattens plane_values() in C order.

        Returns: a dense (N x N) array, N = n_planes * sites * l.
        """
        m = self.lattice.n_planes
        s = self.lattice.n_sites
        l = self.algebra.dim

        if self.linear:
            forms = self.site_forms.reshape(s, l, l)
            gram = np.einsum('pq,st,sij->psiqtj', self.form2, np.eye(s),
                             forms)

            return gram.reshape(m * s * l, m * s * l) * \
                self.lattice.volume_weight

        size = m * s * l
        basis = np.eye(size)
        cochains = [AlgebraCochain2.from_planes(
            self.lattice, self.algebra,
            basis[k].reshape((m,) + tuple(self.lattice.shape) + (l,)))
            for k in range(size)]

        return np.array([[self.evaluate(a, b) for b in cochains]
                         for a in cochains])

    def condition_number(self):
        """The condition number of the Gram matrix, inf when it is singular.

        For tensorial pairings the Gram matrix is form2 tensored with the
        block diagonal of the site forms, so its singular values are the
        products of those of the factors.
        """
        if self.linear:
            s2 = np.linalg.svd(self.form2, compute_uv=False)
            sites = np.linalg.svd(self.site_forms.reshape(
                -1, self.algebra.dim, self.algebra.dim), compute_uv=False)
            largest = s2[0] * np.max(sites)
            smallest = s2[-1] * np.min(sites)
        else:
            s = np.linalg.svd(self.gram_matrix(), compute_uv=False)
            largest, smallest = s[0], s[-1]

        if smallest <= LieAlgebra.rank_threshold * largest:
            return float('inf')

        return float(largest / smallest)

    def is_perfect(self):
        return np.isfinite(self.condition_number())

    def to_json(self):
        if not self.linear:
            return dict(kind='custom', label=self.label, linear=False)

        config = dict(label=self.label, linear=True, form2=self.form2.tolist())

        if self.position_dependent:
            lattice = self.lattice
            config['kind'] = 'position'
            config['site_forms'] = [[lattice.vertex_index(x),
                                     self.site_forms[x].tolist()]
                                    for x in lattice.vertices()]
        else:
            config['kind'] = 'matrix'
            config['matrix'] = self.site_forms.reshape(
                -1, self.algebra.dim, self.algebra.dim)[0].tolist()

        return config


def is_adjoint_structure(p, gauge_samples, field_samples):
    """Check that a tensorial pairing is Ad-invariant at every vertex,

        B_x(Ad_g(x) s(x), Ad_g(x) s'(x)) = B_x(s(x), s'(x)),

    over all gauge samples g and consecutive pairs (s, s') of field samples.

    Arguments:
        p: a PairingSpec.
        gauge_samples: a list of GaugeTransform.
        field_samples: a list of AlgebraCochain0 (vertex sections).

    Returns: a dict with ok, max_residual and the number of comparisons.

    Throws: InputError for non-tensorial pairings.
    """
    if not p.linear:
        raise InputError('Adjoint structures are tensorial; %s is not.' %
                         p.label)

    if len(field_samples) < 2:
        raise InputError('Need at least two field samples.')

    forms = p.site_forms
    pairs = list(zip(field_samples[:-1], field_samples[1:]))
    scale = 1.0
    residual = 0.0

    for s, t in pairs:
        before = np.einsum('...i,...ij,...j->...', s.values, forms, t.values)
        scale = max(scale, float(np.max(np.abs(before), initial=0.0)))

    for g in gauge_samples:
        ad = p.algebra.adjoint_matrices(g.values)

        for s, t in pairs:
            before = np.einsum('...i,...ij,...j->...', s.values, forms,
                               t.values)
            moved_s = np.einsum('...ij,...j->...i', ad, s.values)
            moved_t = np.einsum('...ij,...j->...i', ad, t.values)
            after = np.einsum('...i,...ij,...j->...', moved_s, forms, moved_t)
            residual = max(residual,
                           float(np.max(np.abs(after - before), initial=0.0)))

    return dict(ok=residual <= 1e-9 * scale, max_residual=residual,
                scale=scale, comparisons=len(gauge_samples) * len(pairs))


def adjoint_structure_check(p, rng, gauge_count=32, field_count=32,
                            gauge_scale=1.0):
    """Run is_adjoint_structure with freshly drawn random samples."""
    from ymt.cochain import AlgebraCochain0
    from ymt.links import GaugeTransform

    gauges = [GaugeTransform.random(p.lattice, p.algebra, rng, gauge_scale)
              for _ in range(gauge_count)]
    fields = [AlgebraCochain0.random(p.lattice, p.algebra, rng)
              for _ in range(field_count)]

    return is_adjoint_structure(p, gauges, fields)


def pairing_space_dim_linear(lattice_n, algebra):
    """Count the pairings of the trivial-bundle desk model.

    Arguments:
        lattice_n: the dimension of the base.
        algebra: the LieAlgebra, or its dimension when only the fiber rank
                 is wanted.

    Returns: a dict with the fiber rank of all tensorial pairings, the
             number of independent adjoint structures and the rank of the
             gauge invariant part, C(n, 2)^2 times the latter.
    """
    if lattice_n < 0:
        raise InputError('The base dimension must be non-negative.')

    if isinstance(algebra, LieAlgebra):
        l = algebra.dim
        adjoint_structures = len(algebra.invariant_form_basis())
    else:
        l = int(algebra)
        adjoint_structures = None

    planes = lattice_n * (lattice_n - 1) // 2
    invariant = planes ** 2 * adjoint_structures \
        if adjoint_structures is not None else None

    return dict(fiber_rank=fiber_rank(lattice_n, l),
                adjoint_structures=adjoint_structures if planes else 0,
                gauge_invariant_rank=invariant)
