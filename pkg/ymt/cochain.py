"""Lie algebra valued cochains on a periodic lattice, and the discrete
exterior calculus on them.

Values are numpy arrays whose lattice axes follow any direction axes:

    AlgebraCochain0: (*extents, l)           one vector per vertex
    AlgebraCochain1: (n, *extents, l)        values[mu][x] on edge (mu, x)
    AlgebraCochain2: (n, n, *extents, l)     values[mu, nu][x] on the
                                             plaquette (mu, nu, x),
                                             antisymmetric in mu, nu
"""
import numpy as np

from ymt.errors import InputError


class _Cochain:
    """Arithmetic shared by all cochain types."""

    def __init__(self, lattice, algebra, values):
        values = np.asarray(values, dtype=float)
        expected = self._expected_shape(lattice, algebra)

        if values.shape != expected:
            raise InputError('%s on %r with %s needs values of shape %s, got '
                             '%s.' % (type(self).__name__, lattice,
                                      algebra.name, expected, values.shape))

        self.lattice = lattice
        self.algebra = algebra
        self.values = values

    @staticmethod
    def _expected_shape(lattice, algebra):
        raise NotImplementedError

    def _like(self, values):
        return type(self)(self.lattice, self.algebra, values)

    def _check_compatible(self, other):
        if type(other) is not type(self) or other.lattice != self.lattice or \
                other.algebra != self.algebra:
            raise InputError('Cannot combine %s on %r (%s) with %s.' %
                             (type(self).__name__, self.lattice,
                              self.algebra.name, _describe(other)))

    def __add__(self, other):
        self._check_compatible(other)

        return self._like(self.values + other.values)

    def __sub__(self, other):
        self._check_compatible(other)

        return self._like(self.values - other.values)

    def __neg__(self):
        return self._like(-self.values)

    def __mul__(self, scalar):
        return self._like(float(scalar) * self.values)

    __rmul__ = __mul__

    def copy(self):
        return self._like(self.values.copy())

    def allclose(self, other, atol=1e-12):
        return type(other) is type(self) and other.lattice == self.lattice \
               and other.algebra == self.algebra and \
               np.allclose(self.values, other.values, rtol=0, atol=atol)

    def max_abs(self):
        return float(np.max(np.abs(self.values), initial=0.0))

    def is_zero(self, atol=0.0):
        return self.max_abs() <= atol

    @classmethod
    def zeros(cls, lattice, algebra):
        return cls(lattice, algebra,
                   np.zeros(cls._expected_shape(lattice, algebra)))

    @classmethod
    def random(cls, lattice, algebra, rng, scale=1.0):
        """A cochain with independent normally distributed coefficients."""
        values = scale * rng.normal(size=cls._expected_shape(lattice,
                                                             algebra))

        return cls(lattice, algebra, cls._symmetrize(values))

    @staticmethod
    def _symmetrize(values):
        return values


class AlgebraCochain0(_Cochain):
    """A vertex section of the algebra, e.g. a Higgs field."""

    @staticmethod
    def _expected_shape(lattice, algebra):
        return tuple(lattice.shape) + (algebra.dim,)

    @staticmethod
    def constant(lattice, algebra, x):
        x = np.asarray(x, dtype=float)

        return AlgebraCochain0(lattice, algebra,
                               np.broadcast_to(x, tuple(lattice.shape) +
                                               (algebra.dim,)).copy())

    def value(self, x):
        return self.values[tuple(x)]

    def adjoint(self, g):
        """Act by a gauge transform, phi(x) -> Ad_{g(x)} phi(x)."""
        ad = self.algebra.adjoint_matrices(g.values)

        return self._like(np.einsum('...ij,...j->...i', ad, self.values))

    def differential(self):
        """The plain coboundary (d phi)(mu, x) = phi(x + mu) - phi(x)."""
        lattice = self.lattice

        return AlgebraCochain1(lattice, self.algebra, np.stack(
            [lattice.shift(self.values, mu) - self.values
             for mu in range(lattice.n)]))

    def to_json(self):
        lattice = self.lattice

        return dict(lattice=lattice.to_json(), algebra=self.algebra.name,
                    vertices=[[lattice.vertex_index(x),
                               self.values[x].tolist()]
                              for x in lattice.vertices()])

    @staticmethod
    def from_json(config, algebra=None):
        lattice, algebra = _lattice_and_algebra(config, algebra)
        cochain = AlgebraCochain0.zeros(lattice, algebra)

        for index, coefficients in config['vertices']:
            cochain.values[lattice.vertex(index)] = coefficients

        return cochain


class AlgebraCochain1(_Cochain):
    """An algebra valued 1-cochain, a connection in the trivialized model."""

    @staticmethod
    def _expected_shape(lattice, algebra):
        return (lattice.n,) + tuple(lattice.shape) + (algebra.dim,)

    @staticmethod
    def constant(lattice, algebra, per_direction):
        """The cochain whose value on every edge in direction mu is
        per_direction[mu].
        """
        per_direction = np.asarray(per_direction, dtype=float)
        values = np.zeros(AlgebraCochain1._expected_shape(lattice, algebra))

        for mu in range(lattice.n):
            values[mu] = per_direction[mu]

        return AlgebraCochain1(lattice, algebra, values)

    def value(self, mu, x, reverse=False):
        """The value on the edge (mu, x), negated when the edge is walked
        from x + mu back to x.
        """
        value = self.values[mu][tuple(x)]

        return -value if reverse else value

    def exp(self):
        """The link field exp(D(e)) on every edge."""
        from ymt.links import LinkField

        return LinkField(self.lattice, self.algebra,
                         self.algebra.exp(self.values))

    def adjoint(self, h):
        """Act by the constant gauge transform h. Constant transforms do not
        produce a derivative term, so this is just Ad_h on every edge.
        """
        ad = self.algebra.adjoint_matrices(h)

        return self._like(np.einsum('ij,...j->...i', ad, self.values))

    def coboundary(self):
        return coboundary(self)

    def cup_bracket(self):
        return cup_bracket(self)

    def curvature(self):
        return curvature(self)

    def to_json(self):
        lattice = self.lattice

        return dict(lattice=lattice.to_json(), algebra=self.algebra.name,
                    edges=[[lattice.edge_index(mu, x),
                            self.values[mu][x].tolist()]
                           for mu, x in lattice.edges()])

    @staticmethod
    def from_json(config, algebra=None):
        """Load a 1-cochain from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            algebra: the algebra; looked up in the catalog by name if not
                     given.

        Returns: the AlgebraCochain1. Edges that are not listed are zero.
        """
        lattice, algebra = _lattice_and_algebra(config, algebra)
        cochain = AlgebraCochain1.zeros(lattice, algebra)

        for index, coefficients in config['edges']:
            mu, x = lattice.edge(int(index))
            cochain.values[mu][x] = coefficients

        return cochain


class AlgebraCochain2(_Cochain):
    """An algebra valued 2-cochain, e.g. a curvature or a B field."""

    # Allowed deviation from antisymmetry in mu, nu for given values.
    antisymmetry_tolerance = 1e-12

    def __init__(self, lattice, algebra, values):
        super().__init__(lattice, algebra, values)

        residual = np.max(np.abs(self.values +
                                 np.swapaxes(self.values, 0, 1)), initial=0.0)

        if residual > AlgebraCochain2.antisymmetry_tolerance:
            raise InputError('2-cochain values must be antisymmetric in the '
                             'plane directions (residual %.3g).' % residual)

    @staticmethod
    def _expected_shape(lattice, algebra):
        return (lattice.n, lattice.n) + tuple(lattice.shape) + (algebra.dim,)

    @staticmethod
    def _symmetrize(values):
        values = values.copy()
        n = values.shape[0]

        for mu in range(n):
            values[mu, mu] = 0

            for nu in range(mu):
                values[mu, nu] = -values[nu, mu]

        return values

    @staticmethod
    def from_planes(lattice, algebra, plane_values):
        """Build a 2-cochain from its values on the planes mu < nu.

        Arguments:
            plane_values: an array of shape (n_planes, *extents, l) in the
                          order of lattice.planes.
        """
        plane_values = np.asarray(plane_values, dtype=float)
        values = np.zeros(AlgebraCochain2._expected_shape(lattice, algebra))

        for p, (mu, nu) in enumerate(lattice.planes):
            values[mu, nu] = plane_values[p]
            values[nu, mu] = -plane_values[p]

        return AlgebraCochain2(lattice, algebra, values)

    def plane_values(self):
        """The values on the planes mu < nu, shape (n_planes, *extents, l)."""
        return np.stack([self.values[mu, nu]
                         for mu, nu in self.lattice.planes])

    def value(self, mu, nu, x):
        """The value on the plaquette spanned by mu, nu at x. Swapping mu and
        nu reverses the orientation and negates the value.
        """
        return self.values[mu, nu][tuple(x)]

    def adjoint(self, g):
        """Act by a gauge transform, w(mu, nu, x) -> Ad_{g(x)} w(mu, nu, x).
        """
        ad = self.algebra.adjoint_matrices(g.values)

        return self._like(np.einsum('...ij,ab...j->ab...i', ad,
                                    self.values))

    def to_json(self):
        lattice = self.lattice

        return dict(lattice=lattice.to_json(), algebra=self.algebra.name,
                    plaquettes=[[lattice.plaquette_index(mu, nu, x),
                                 self.values[mu, nu][x].tolist()]
                                for mu, nu, x in lattice.plaquettes()])

    @staticmethod
    def from_json(config, algebra=None):
        lattice, algebra = _lattice_and_algebra(config, algebra)
        values = np.zeros(AlgebraCochain2._expected_shape(lattice, algebra))

        for index, coefficients in config['plaquettes']:
            mu, nu, x = lattice.plaquette(int(index))
            values[mu, nu][x] = coefficients
            values[nu, mu][x] = np.negative(coefficients)

        return AlgebraCochain2(lattice, algebra, values)


def coboundary(d):
    """The coboundary dD of a 1-cochain.

    On the plaquette (mu, nu, x) this is the signed sum round its boundary,
    D(mu, x) + D(nu, x + mu) - D(mu, x + nu) - D(nu, x).

    Returns: an AlgebraCochain2.
    """
    lattice = d.lattice
    v = d.values
    planes = [v[mu] + lattice.shift(v[nu], mu) - lattice.shift(v[mu], nu) -
              v[nu] for mu, nu in lattice.planes]

    return AlgebraCochain2.from_planes(lattice, d.algebra, planes)


def cup(a, b):
    """The bilinear cup bracket of two 1-cochains,

        1/2 [A(mu, x), B(nu, x + mu)] - 1/2 [A(nu, x), B(mu, x + nu)].

    Returns: an AlgebraCochain2.
    """
    a._check_compatible(b)
    lattice = a.lattice
    algebra = a.algebra

    if algebra.is_abelian:
        return AlgebraCochain2.zeros(lattice, algebra)

    planes = [0.5 * algebra.bracket(a.values[mu],
                                    lattice.shift(b.values[nu], mu)) -
              0.5 * algebra.bracket(a.values[nu],
                                    lattice.shift(b.values[mu], nu))
              for mu, nu in lattice.planes]

    return AlgebraCochain2.from_planes(lattice, algebra, planes)


def cup_bracket(d):
    """The discrete 1/2 [D ^ D] of a connection."""
    return cup(d, d)


def curvature(d):
    """The curvature F_D = dD + 1/2 [D ^ D]."""
    return coboundary(d) + cup_bracket(d)


def three_cell_boundary(w):
    """Sum a 2-cochain with signs over the boundary of every 3-cell.

    For the cube spanned by mu < nu < rho at x this is
    Delta_mu w(nu, rho) - Delta_nu w(mu, rho) + Delta_rho w(mu, nu),
    with Delta_mu f = f(x + mu) - f(x). It vanishes on coboundaries.

    Returns: an array of shape (n_cubes_per_site, *extents, l).
    """
    lattice = w.lattice
    v = w.values
    n = lattice.n

    def delta(f, mu):
        return lattice.shift(f, mu) - f

    sums = [delta(v[nu, rho], mu) - delta(v[mu, rho], nu) +
            delta(v[mu, nu], rho)
            for mu in range(n) for nu in range(mu + 1, n)
            for rho in range(nu + 1, n)]

    if not sums:
        return np.zeros((0,) + tuple(lattice.shape) + (w.algebra.dim,))

    return np.stack(sums)


def small_field(lattice, algebra, constant, fluctuation, eps):
    """The family D = eps A + eps^2 B with A constant along each direction.

    Its coboundary is of order eps^2, which is the regime where plaquette
    holonomies agree with the curvature up to O(eps^3).

    Arguments:
        constant: per direction coefficient vectors, shape (n, l).
        fluctuation: an AlgebraCochain1.
        eps: the amplitude.

    Returns: an AlgebraCochain1.
    """
    a = AlgebraCochain1.constant(lattice, algebra, constant)

    return eps * a + eps ** 2 * fluctuation


def _lattice_and_algebra(config, algebra):
    from ymt.catalog import Algebras
    from ymt.lattice import Lattice

    lattice = Lattice.from_json(config['lattice'])

    if algebra is None:
        algebra = Algebras.by_name(config['algebra'])

    return lattice, algebra


def _describe(value):
    if hasattr(value, 'lattice') and hasattr(value, 'algebra'):
        return '%s on %r (%s)' % (type(value).__name__, value.lattice,
                                  value.algebra.name)

    return type(value).__name__
