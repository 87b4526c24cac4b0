"""Higgs fields: covariant derivatives of vertex sections and the Higgs
correction functional.
"""
import numpy as np

from ymt.cochain import AlgebraCochain0, AlgebraCochain1
from ymt.errors import InputError
from ymt.links import LinkField


class QuarticPotential:
    """V(phi) = coupling * sum_x (|phi(x)|^2 - vev^2)^2, with |.| the
    coefficient norm. It is gauge invariant whenever Ad acts orthogonally on
    coefficients, which holds for every catalog algebra.
    """

    def __init__(self, coupling=1.0, vev=1.0):
        self.coupling = float(coupling)
        self.vev = float(vev)

    def __call__(self, phi):
        norms = np.sum(phi.values ** 2, axis=-1).reshape(-1)

        return self.coupling * float(np.sum((norms - self.vev ** 2) ** 2)) * \
            phi.lattice.volume_weight

    def to_json(self):
        return dict(kind='quartic', coupling=self.coupling, vev=self.vev)

    @staticmethod
    def from_json(config):
        return QuarticPotential(config.get('coupling', 1.0),
                                config.get('vev', 1.0))


def covariant_derivative(dhat, phi):
    """The covariant derivative of a vertex section along a connection.

    For link fields, on the edge (mu, x):

        Ad_{U(mu, x)} phi(x + mu) - phi(x)

    and for algebra valued connections dphi(mu, x) + [D(mu, x), phi(x)].
    Under a gauge transform g the result picks up Ad_{g(x)} at the start
    of each edge.

    Arguments:
        dhat: a LinkField or AlgebraCochain1.
        phi: an AlgebraCochain0 on the same lattice and algebra.

    Returns: an AlgebraCochain1.

    Throws: InputError if the two live on different lattices or algebras.
    """
    if not isinstance(phi, AlgebraCochain0):
        raise InputError('The Higgs field must be a vertex section, got %s.' %
                         type(phi).__name__)

    if not isinstance(dhat, (LinkField, AlgebraCochain1)):
        raise InputError('Expected a connection field, got %s.' %
                         type(dhat).__name__)

    if dhat.lattice != phi.lattice or dhat.algebra != phi.algebra:
        raise InputError('The connection lives on %r (%s) but the Higgs field '
                         'on %r (%s).' % (dhat.lattice, dhat.algebra.name,
                                          phi.lattice, phi.algebra.name))

    lattice = phi.lattice
    algebra = phi.algebra

    if isinstance(dhat, AlgebraCochain1):
        d_phi = phi.differential()

        if algebra.is_abelian:
            return d_phi

        return d_phi + AlgebraCochain1(lattice, algebra, algebra.bracket(
            dhat.values, np.broadcast_to(phi.values, dhat.values.shape)))

    ad = algebra.adjoint_matrices(dhat.values)
    values = np.stack([np.einsum('...ij,...j->...i', ad[mu],
                                 lattice.shift(phi.values, mu)) - phi.values
                       for mu in range(lattice.n)])

    return AlgebraCochain1(lattice, algebra, values)


def parallel_residual(dhat, phi):
    """The largest coefficient of the covariant derivative of phi."""
    return covariant_derivative(dhat, phi).max_abs()


def edge_pairing(theory, w1, w2):
    """Pair two algebra valued 1-cochains edge by edge with the theory's
    algebra form at the start vertex, weighted by the lattice volume weight.
    """
    forms = theory.pairing.site_forms
    values = np.einsum('m...i,...ij,m...j->...', w1.values, forms, w2.values)

    return float(np.sum(values.reshape(-1))) * theory.lattice.volume_weight


def higgs_correction(theory, configuration, potential=None):
    """C(D, phi) = <<nabla phi, nabla phi>> + V(phi).

    Arguments:
        theory: the YMTTheory whose algebra form pairs the derivatives.
        configuration: a Configuration with a Higgs component.
        potential: a callable on AlgebraCochain0, the quartic potential
                   with unit coupling and vev by default.

    Returns: a float.
    """
    if configuration.phi is None:
        raise InputError('The configuration has no Higgs field.')

    if potential is None:
        potential = QuarticPotential()

    nabla = covariant_derivative(configuration.links, configuration.phi)

    return edge_pairing(theory, nabla, nabla) + potential(configuration.phi)


def theta_field(coherent, lattice, angles):
    """A Higgs field from the coherent embedding, phi(x) = theta_star at
    the Euler angles given for x.

    Arguments:
        coherent: a CoherentEmbedding.
        lattice: the Lattice.
        angles: an array of shape (*extents, 2) or (*extents, 3).

    Returns: an AlgebraCochain0 over the target algebra.
    """
    angles = np.asarray(angles, dtype=float)
    values = np.zeros(tuple(lattice.shape) + (coherent.target.dim,))

    for x in lattice.vertices():
        values[x] = coherent.theta_star(*angles[x])

    return AlgebraCochain0(lattice, coherent.target, values)
