"""The shipped Lie algebras and embeddings."""
import numpy as np

from ymt.errors import InputError
from ymt.lie import CoherentEmbedding, GroupEmbedding, LieAlgebra


def levi_civita():
    """The rank 3 Levi-Civita symbol as a 3 x 3 x 3 array."""
    eps = np.zeros((3, 3, 3))

    for i, j, k in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        eps[i, j, k] = 1
        eps[j, i, k] = -1

    return eps


class Algebras:
    """Contains the catalog of Lie algebras."""

    @staticmethod
    def u1():
        """The abelian algebra of U(1), represented by i on C."""
        return LieAlgebra('u1', np.zeros((1, 1, 1)), [[[1j]]],
                          finite_generators=[np.array([[1j]])])

    @staticmethod
    def u1k(k):
        """The abelian algebra of the torus U(1)^k.

        Arguments:
            k: the number of U(1) factors.

        Returns: the algebra, represented by diagonal matrices.
        """
        if k < 1:
            raise InputError('u1^k needs k >= 1, got %d.' % k)

        rep = np.zeros((k, k, k), dtype=complex)
        generators = []

        for i in range(k):
            rep[i, i, i] = 1j
            g = np.eye(k, dtype=complex)
            g[i, i] = 1j
            generators.append(g)

        return LieAlgebra('u1^%d' % k, np.zeros((k, k, k)), rep,
                          finite_generators=generators)

    @staticmethod
    def su2():
        """su(2) with [X_i, X_j] = eps_ijk X_k, X_k = -(i/2) sigma_k.

        The finite generators are -i sigma_k, which generate the quaternion
        group.
        """
        sigma = np.array([[[0, 1], [1, 0]],
                          [[0, -1j], [1j, 0]],
                          [[1, 0], [0, -1]]], dtype=complex)
        generators = [np.array([[0, -1j], [-1j, 0]]),
                      np.array([[0, -1], [1, 0]], dtype=complex),
                      np.array([[-1j, 0], [0, 1j]])]

        return LieAlgebra('su2', levi_civita(), -0.5j * sigma,
                          finite_generators=generators)

    @staticmethod
    def so3():
        """so(3) with [L_i, L_j] = eps_ijk L_k, (L_k)_ab = -eps_kab.

        The finite generators are quarter turns about z and x, which
        generate the rotation group of the cube.
        """
        eps = levi_civita()
        generators = [np.array([[0., -1, 0], [1, 0, 0], [0, 0, 1]]),
                      np.array([[1., 0, 0], [0, 0, -1], [0, 1, 0]])]

        return LieAlgebra('so3', eps, -eps, finite_generators=generators)

    @staticmethod
    def so2():
        """The algebra of rotations of the plane."""
        j = np.array([[0., -1], [1, 0]])

        return LieAlgebra('so2', np.zeros((1, 1, 1)), [j],
                          finite_generators=[j.copy()])

    @staticmethod
    def su2_u1():
        """su(2) + u(1), represented block diagonally on C^3."""
        algebra = Algebras.su2().direct_sum(Algebras.u1(), name='su2+u1')

        def block(a, b):
            g = np.zeros((3, 3), dtype=complex)
            g[:2, :2] = a
            g[2, 2] = b

            return g

        quaternions = Algebras.su2().finite_generators
        algebra.finite_generators = [block(quaternions[0], 1),
                                     block(quaternions[1], 1),
                                     block(np.eye(2), 1j)]

        return algebra

    @staticmethod
    def by_name(name):
        """Look up a catalog algebra.

        Arguments:
            name: one of u1, u1^k (e.g. u1^2), su2, so3, so2, su2+u1.

        Returns: the LieAlgebra.

        Throws: InputError for unknown names.
        """
        if name.startswith('u1^'):
            try:
                return Algebras.u1k(int(name[3:]))
            except ValueError:
                pass

        named = dict(u1=Algebras.u1, su2=Algebras.su2, so3=Algebras.so3,
                     so2=Algebras.so2)
        named['su2+u1'] = Algebras.su2_u1

        if name not in named:
            raise InputError('Unknown algebra %r. Known algebras: %s, u1^k.'
                             % (name, ', '.join(sorted(named))))

        return named[name]()

    @staticmethod
    def all():
        """Get a list of all catalog algebras (u1^k with k = 2)."""
        return [Algebras.u1(), Algebras.u1k(2), Algebras.su2(),
                Algebras.so3(), Algebras.so2(), Algebras.su2_u1()]


class Embeddings:
    """Contains the catalog of group embeddings."""

    @staticmethod
    def so2_so3():
        """SO(2) as the rotations about the z axis of SO(3)."""
        def group_map(g):
            out = np.zeros(g.shape[:-2] + (3, 3), dtype=g.dtype)
            out[..., :2, :2] = g
            out[..., 2, 2] = 1

            return out

        return GroupEmbedding(Algebras.so2(), Algebras.so3(),
                              [[0.], [0.], [1.]], group_map, name='so2->so3')

    @staticmethod
    def u1_su2():
        """U(1) as the diagonal torus of SU(2), e^{it} -> diag(e^{it},
        e^{-it}). On algebras i -> diag(i, -i) = -2 X_3.
        """
        def group_map(g):
            z = g[..., 0, 0]
            out = np.zeros(g.shape[:-2] + (2, 2), dtype=complex)
            out[..., 0, 0] = z
            out[..., 1, 1] = np.conj(z)

            return out

        return GroupEmbedding(Algebras.u1(), Algebras.su2(),
                              [[0.], [0.], [-2.]], group_map, name='u1->su2')

    @staticmethod
    def identity(algebra):
        return GroupEmbedding.identity(algebra)

    @staticmethod
    def by_name(name):
        """Look up a catalog embedding by name ('so2->so3', 'u1->su2' or
        'id(<algebra>)').
        """
        if name.startswith('id(') and name.endswith(')'):
            return GroupEmbedding.identity(Algebras.by_name(name[3:-1]))

        named = {'so2->so3': Embeddings.so2_so3,
                 'u1->su2': Embeddings.u1_su2}

        if name not in named:
            raise InputError('Unknown embedding %r.' % name)

        return named[name]()

    @staticmethod
    def hedgehog():
        """so(2) -> so(3) with theta(G) = e_z, the Higgs field of the
        magnetic monopole. theta_star(phi, alpha) points along
        (sin phi sin alpha, -cos phi sin alpha, cos alpha).
        """
        return CoherentEmbedding(Embeddings.so2_so3(), [0., 0., 1.],
                                 tilt_axis=[1., 0., 0.])
