"""Group valued fields: link variables on edges and gauge transforms on
vertices, plaquette holonomies and their principal logarithms.
"""
import numpy as np
import scipy.linalg

from ymt.cochain import AlgebraCochain1, AlgebraCochain2
from ymt.errors import InputError, SingularityError
from ymt.lie import LieAlgebra, _matrices_from_json, _matrices_to_json

# Holonomies whose rotation angle is within this distance of pi are treated
# as lying on the branch cut of the principal logarithm.
BRANCH_MARGIN = 1e-6


def dagger(g):
    """The conjugate transpose of (a batch of) matrices. This is the inverse
    for every catalog group.
    """
    return np.conj(np.swapaxes(g, -1, -2))


def principal_log(algebra, g):
    """The principal matrix logarithm of a batch of group elements, in
    algebra coordinates.

    Closed forms are used for U(1), SO(2), SU(2) and SO(3); anything else
    goes through scipy.linalg.logm one matrix at a time.

    Arguments:
        algebra: the LieAlgebra of the group.
        g: group matrices of shape (..., d, d).

    Returns: a pair (coefficients of shape (..., l), rotation angles of shape
             (...)). The caller decides what to do with angles near pi.
    """
    g = np.asarray(g)
    d = g.shape[-1]
    batch = g.shape[:-2]

    if d == 1:
        angle = np.angle(g[..., 0, 0])
        log = np.zeros(g.shape, dtype=complex)
        log[..., 0, 0] = 1j * angle

        return algebra.from_matrix(log), np.abs(angle)

    if d == 2 and not np.iscomplexobj(g):
        angle = np.arctan2(g[..., 1, 0], g[..., 0, 0])
        log = np.zeros(g.shape)
        log[..., 0, 1] = -angle
        log[..., 1, 0] = angle

        return algebra.from_matrix(log), np.abs(angle)

    if d == 2 and np.allclose(np.linalg.det(g), 1, rtol=0, atol=1e-9):
        skew = 0.5 * (g - dagger(g))
        sin = np.linalg.norm(skew.reshape(batch + (4,)), axis=-1) / np.sqrt(2)
        cos = 0.5 * np.real(g[..., 0, 0] + g[..., 1, 1])
        angle = np.arctan2(sin, cos)

        return algebra.from_matrix(_scale_by_angle(skew, angle, sin)), angle

    if d == 3 and not np.iscomplexobj(g):
        skew = 0.5 * (g - np.swapaxes(g, -1, -2))
        sin = np.linalg.norm(skew.reshape(batch + (9,)), axis=-1) / np.sqrt(2)
        cos = 0.5 * (np.trace(g, axis1=-2, axis2=-1) - 1)
        angle = np.arctan2(sin, cos)

        return algebra.from_matrix(_scale_by_angle(skew, angle, sin)), angle

    flat = g.reshape((-1, d, d))
    logs = np.empty(flat.shape, dtype=complex)
    angles = np.empty(flat.shape[0])

    for i, matrix in enumerate(flat):
        angles[i] = np.max(np.abs(np.angle(np.linalg.eigvals(matrix))))
        logs[i] = scipy.linalg.logm(matrix)

    return algebra.from_matrix(logs.reshape(g.shape)), angles.reshape(batch)


def _scale_by_angle(skew, angle, sin):
    # angle / sin(angle), which tends to 1 for small angles.
    small = sin < 1e-8
    factor = np.where(small, 1 + angle ** 2 / 6,
                      angle / np.where(small, 1, sin))

    return factor[..., None, None] * skew


class LinkField:
    """A group element on every edge. values[mu][x] is the parallel
    transporter on the edge from x to x + mu; walking the edge backwards
    gives the inverse.
    """

    def __init__(self, lattice, algebra, values, validate=True):
        values = np.asarray(values)
        d = algebra.rep_dim
        expected = (lattice.n,) + tuple(lattice.shape) + (d, d)

        if values.shape != expected:
            raise InputError('A link field on %r for %s needs values of '
                             'shape %s, got %s.' % (lattice, algebra.name,
                                                    expected, values.shape))

        self.lattice = lattice
        self.algebra = algebra
        self.values = values

        if validate:
            self.validate()

    def validate(self):
        """Throws: InputError if some link is not a group element."""
        residual = self.algebra.group_residual(self.values)

        if residual > LieAlgebra.group_tolerance:
            raise InputError('Link field values are not in the group of %s '
                             '(residual %.3g).' % (self.algebra.name,
                                                   residual))

    @staticmethod
    def identity(lattice, algebra):
        d = algebra.rep_dim
        values = np.broadcast_to(np.eye(d, dtype=algebra.rep_dtype),
                                 (lattice.n,) + tuple(lattice.shape) +
                                 (d, d)).copy()

        return LinkField(lattice, algebra, values, validate=False)

    @staticmethod
    def random(lattice, algebra, rng, scale=0.3):
        """exp of a random algebra cochain with the given coefficient scale.
        """
        return AlgebraCochain1.random(lattice, algebra, rng, scale).exp()

    def link(self, mu, x, reverse=False):
        u = self.values[mu][tuple(x)]

        return dagger(u) if reverse else u

    def copy(self):
        return LinkField(self.lattice, self.algebra, self.values.copy(),
                         validate=False)

    def allclose(self, other, atol=1e-12):
        return isinstance(other, LinkField) and \
               other.lattice == self.lattice and \
               other.algebra == self.algebra and \
               np.allclose(self.values, other.values, rtol=0, atol=atol)

    def is_identity(self, atol=1e-12):
        eye = np.eye(self.values.shape[-1])

        return bool(np.allclose(self.values, eye, rtol=0, atol=atol))

    def plaquette_holonomy(self, mu, nu):
        """U(mu, x) U(nu, x + mu) U(mu, x + nu)^-1 U(nu, x)^-1 at every x.

        Returns: an array of shape (*extents, d, d).
        """
        lattice = self.lattice
        u = self.values

        return u[mu] @ lattice.shift(u[nu], mu) @ \
            dagger(lattice.shift(u[mu], nu)) @ dagger(u[nu])

    def plaquette_curvature(self):
        """The principal logarithm of every plaquette holonomy.

        Returns: an AlgebraCochain2.

        Throws: SingularityError naming the first plaquette (in lexicographic
                order) whose holonomy is within BRANCH_MARGIN of the branch
                cut.
        """
        lattice = self.lattice
        planes = []
        bad = []

        for mu, nu in lattice.planes:
            coefficients, angles = principal_log(
                self.algebra, self.plaquette_holonomy(mu, nu))
            planes.append(coefficients)

            for x in zip(*np.nonzero(angles >= np.pi - BRANCH_MARGIN)):
                bad.append((tuple(int(i) for i in x), mu, nu))

        if bad:
            x, mu, nu = min(bad)
            raise SingularityError('The holonomy of plaquette (%d, %d) at %s '
                                   'is at distance pi from the identity; its '
                                   'principal logarithm is not defined.' %
                                   (mu, nu, x))

        return AlgebraCochain2.from_planes(lattice, self.algebra, planes)

    def log(self):
        """The edgewise principal logarithm, inverse to AlgebraCochain1.exp
        inside the injectivity radius.

        Throws: SingularityError
        """
        coefficients, angles = principal_log(self.algebra, self.values)

        if np.any(angles >= np.pi - BRANCH_MARGIN):
            raise SingularityError('A link is at distance pi from the '
                                   'identity.')

        return AlgebraCochain1(self.lattice, self.algebra, coefficients)

    def gauge_transform(self, g):
        """U'(mu, x) = g(x) U(mu, x) g(x + mu)^-1.

        Throws: InputError if the gauge transform lives elsewhere.
        """
        if g.lattice != self.lattice or g.algebra != self.algebra:
            raise InputError('Cannot apply a gauge transform on %r (%s) to '
                             'links on %r (%s).' %
                             (g.lattice, g.algebra.name, self.lattice,
                              self.algebra.name))

        lattice = self.lattice
        values = np.stack([g.values @ self.values[mu] @
                           dagger(lattice.shift(g.values, mu))
                           for mu in range(lattice.n)])

        return LinkField(lattice, self.algebra, values, validate=False)

    def embed(self, embedding):
        """Push the links into the larger group of an embedding."""
        return LinkField(self.lattice, embedding.target,
                         embedding.embed_group(self.values), validate=False)

    def to_json(self):
        lattice = self.lattice

        return dict(lattice=lattice.to_json(), algebra=self.algebra.name,
                    links=[[lattice.edge_index(mu, x),
                            _matrices_to_json(self.values[mu][x][None])[0]]
                           for mu, x in lattice.edges()])

    @staticmethod
    def from_json(config, algebra=None):
        """Load a link field from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            algebra: the algebra; looked up in the catalog by name if not
                     given.

        Returns: the LinkField. Edges that are not listed carry the
                 identity.
        """
        from ymt.cochain import _lattice_and_algebra

        lattice, algebra = _lattice_and_algebra(config, algebra)
        field = LinkField.identity(lattice, algebra)

        for index, matrix in config['links']:
            mu, x = lattice.edge(int(index))
            field.values[mu][x] = _matrices_from_json([matrix])[0]

        field.validate()

        return field


class GaugeTransform:
    """A group element on every vertex."""

    def __init__(self, lattice, algebra, values, validate=True):
        values = np.asarray(values)
        d = algebra.rep_dim
        expected = tuple(lattice.shape) + (d, d)

        if values.shape != expected:
            raise InputError('A gauge transform on %r for %s needs values of '
                             'shape %s, got %s.' % (lattice, algebra.name,
                                                    expected, values.shape))

        self.lattice = lattice
        self.algebra = algebra
        self.values = values

        if validate:
            residual = algebra.group_residual(values)

            if residual > LieAlgebra.group_tolerance:
                raise InputError('Gauge transform values are not in the '
                                 'group of %s (residual %.3g).' %
                                 (algebra.name, residual))

    @staticmethod
    def identity(lattice, algebra):
        return GaugeTransform.constant(lattice, algebra,
                                       np.eye(algebra.rep_dim,
                                              dtype=algebra.rep_dtype))

    @staticmethod
    def constant(lattice, algebra, h):
        h = np.asarray(h)
        values = np.broadcast_to(h, tuple(lattice.shape) + h.shape).copy()

        return GaugeTransform(lattice, algebra, values)

    @staticmethod
    def local(lattice, algebra, x, h):
        """The transform that is h at the vertex x and the identity
        elsewhere.
        """
        h = np.asarray(h)
        dtype = np.result_type(h, algebra.rep_dtype)
        values = np.broadcast_to(np.eye(h.shape[-1], dtype=dtype),
                                 tuple(lattice.shape) + h.shape).copy()
        values[tuple(x)] = h

        return GaugeTransform(lattice, algebra, values)

    @staticmethod
    def random(lattice, algebra, rng, scale=1.0):
        """exp of independent random algebra elements at every vertex."""
        coefficients = scale * rng.normal(size=tuple(lattice.shape) +
                                          (algebra.dim,))

        return GaugeTransform(lattice, algebra, algebra.exp(coefficients),
                              validate=False)

    def inverse(self):
        return GaugeTransform(self.lattice, self.algebra, dagger(self.values),
                              validate=False)

    def compose(self, other):
        """The pointwise product, acting as 'other first, then self'."""
        return GaugeTransform(self.lattice, self.algebra,
                              self.values @ other.values, validate=False)

    def allclose(self, other, atol=1e-12):
        return isinstance(other, GaugeTransform) and \
               other.lattice == self.lattice and \
               other.algebra == self.algebra and \
               np.allclose(self.values, other.values, rtol=0, atol=atol)

    def embed(self, embedding):
        """Compose vertexwise with the group embedding."""
        return GaugeTransform(self.lattice, embedding.target,
                              embedding.embed_group(self.values),
                              validate=False)

    def to_json(self):
        lattice = self.lattice

        return dict(lattice=lattice.to_json(), algebra=self.algebra.name,
                    vertices=[[lattice.vertex_index(x),
                               _matrices_to_json(self.values[x][None])[0]]
                              for x in lattice.vertices()])


def gauge_transform_links(u, g):
    """Apply the gauge transform g to the links u."""
    return u.gauge_transform(g)


def plaquette_curvature(u):
    return u.plaquette_curvature()
