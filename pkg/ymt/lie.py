"""Finite dimensional real Lie algebras, bilinear forms on them and
embeddings between the matrix groups they come from.
"""
import numpy as np
import scipy.linalg

from ymt.errors import InputError, PreconditionError, VerificationError


class LieAlgebra:
    """A real Lie algebra given by structure constants.

    The bracket of two basis vectors is [X_i, X_j] = sum_k c[i][j][k] X_k.
    The matrix representation, if any, is only needed for group valued
    fields (links, gauge transforms) and for trace forms.
    """

    # Relative threshold on singular values used to decide nullspace ranks.
    rank_threshold = 1e-9

    # Absolute tolerance for the antisymmetry, Jacobi and representation
    # checks.
    structure_tolerance = 1e-12

    # Tolerance on |g g^+ - I| for a matrix to count as a group element.
    group_tolerance = 1e-10

    def __init__(self, name, structure_constants, matrix_rep=None,
                 finite_generators=None):
        """Create a Lie algebra.

        Arguments:
            name: the identifier used by the catalog and in JSON.
            structure_constants: an l x l x l array.
            matrix_rep: optional list of l square matrices, one per basis
                        vector.
            finite_generators: optional list of group matrices of finite
                               order whose entries are exactly
                               representable (0, +-1, +-i). They generate
                               the gauge transforms used to close sampled
                               domains.
        """
        c = np.asarray(structure_constants, dtype=float)

        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise InputError('Structure constants of %s must be an l x l x l '
                             'array, got shape %s.' % (name, c.shape))

        self.name = name
        self.c = c
        self.dim = c.shape[0]

        if matrix_rep is not None:
            matrix_rep = np.asarray(matrix_rep)

            if matrix_rep.ndim != 3 or matrix_rep.shape[0] != self.dim or \
                    matrix_rep.shape[1] != matrix_rep.shape[2]:
                raise InputError('The matrix representation of %s must be a '
                                 'list of %d square matrices.' %
                                 (name, self.dim))

            if not np.iscomplexobj(matrix_rep):
                matrix_rep = matrix_rep.astype(float)

        self.matrix_rep = matrix_rep
        self.finite_generators = [np.asarray(g) for g in finite_generators] \
            if finite_generators is not None else []

        self._coordinate_solver = None

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.name == other.name \
               and self.c.shape == other.c.shape \
               and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.name, self.dim))

    def __repr__(self):
        return 'LieAlgebra(%s, dim=%d)' % (self.name, self.dim)

    @property
    def is_abelian(self):
        return not np.any(self.c)

    @property
    def rep_dim(self):
        """The size of the representing matrices."""
        self._require_rep()

        return self.matrix_rep.shape[1]

    @property
    def rep_dtype(self):
        self._require_rep()

        return self.matrix_rep.dtype

    def _require_rep(self):
        if self.matrix_rep is None:
            raise InputError('%s has no matrix representation.' % self.name)

    def _check_vector(self, x, what='vector'):
        x = np.asarray(x, dtype=float)

        if x.shape[-1:] != (self.dim,):
            raise InputError('Expected a %s with %d coefficients for %s, got '
                             'shape %s.' % (what, self.dim, self.name,
                                            x.shape))

        return x

    def validate(self):
        """Check antisymmetry, the Jacobi identity and, if present, that the
        matrix representation reproduces the structure constants.

        Throws: InputError
        """
        c = self.c
        tol = LieAlgebra.structure_tolerance

        antisymmetry = np.max(np.abs(c + c.transpose(1, 0, 2)), initial=0.0)

        if antisymmetry > tol:
            raise InputError('Structure constants of %s are not '
                             'antisymmetric (residual %.3g).' %
                             (self.name, antisymmetry))

        jacobi = np.einsum('ijm,mkn->ijkn', c, c) + \
            np.einsum('jkm,min->ijkn', c, c) + \
            np.einsum('kim,mjn->ijkn', c, c)
        jacobi = np.max(np.abs(jacobi), initial=0.0)

        if jacobi > tol:
            raise InputError('Structure constants of %s violate the Jacobi '
                             'identity (residual %.3g).' %
                             (self.name, jacobi))

        if self.matrix_rep is not None:
            m = self.matrix_rep
            commutators = np.einsum('iab,jbc->ijac', m, m) - \
                np.einsum('jab,ibc->ijac', m, m)
            expected = np.einsum('ijk,kac->ijac', c, m)
            residual = np.max(np.abs(commutators - expected), initial=0.0)

            if residual > tol:
                raise InputError('The matrix representation of %s does not '
                                 'reproduce its structure constants '
                                 '(residual %.3g).' % (self.name, residual))

    def bracket(self, x, y):
        """The Lie bracket of two coefficient vectors.

        Both arguments may carry leading batch dimensions.

        Arguments:
            x: the left coefficient vector.
            y: the right coefficient vector.

        Returns: sum_{i,j} x_i y_j c[i][j][.].
        """
        x = self._check_vector(x)
        y = self._check_vector(y)

        return np.einsum('...i,...j,ijk->...k', x, y, self.c)

    def ad(self, x):
        """The matrix of ad_x acting on coefficient vectors.

        Returns: M with (ad_x)_{kj} = sum_i x_i c[i][j][k].
        """
        x = self._check_vector(x)

        return np.einsum('i,ijk->kj', x, self.c)

    def ad_basis(self):
        """The matrices ad_{X_i} for every basis vector, shape (l, l, l)."""
        return np.einsum('ijk->ikj', self.c)

    def killing_form(self):
        """The Killing form B(X_i, X_j) = trace(ad_{X_i} ad_{X_j}).

        Returns: the Killing form as a BilinearForm.
        """
        ad = self.ad_basis()

        return BilinearForm(self, np.einsum('imn,jnm->ij', ad, ad),
                            name='killing')

    def invariance_operator(self):
        """The linear map sending a bilinear form B (flattened row major) to
        the values B([Z,X],Y) + B(X,[Z,Y]) over all basis triples (Z, X, Y).

        Returns: an array of shape (l^3, l^2).
        """
        l = self.dim
        eye = np.eye(l)
        operator = np.einsum('zxp,qy->zxypq', self.c, eye) + \
            np.einsum('px,zyq->zxypq', eye, self.c)

        return operator.reshape(l ** 3, l ** 2)

    def invariant_form_basis(self):
        """Find a basis of the ad-invariant bilinear forms.

        For connected groups ad-invariance and Ad-invariance agree, and all
        catalog groups are connected.

        Returns: a list of BilinearForm.

        Throws: VerificationError if the Killing form does not lie in the
                span of the result.
        """
        l = self.dim
        operator = self.invariance_operator()

        if not np.any(operator):
            kernel = np.eye(l * l)
        else:
            kernel = scipy.linalg.null_space(
                operator, rcond=LieAlgebra.rank_threshold)

        basis = [BilinearForm(self, kernel[:, k].reshape(l, l))
                 for k in range(kernel.shape[1])]

        killing = self.killing_form().matrix.reshape(-1)

        if kernel.shape[1] > 0:
            coefficients, *_ = np.linalg.lstsq(kernel, killing, rcond=None)
            residual = np.max(np.abs(kernel @ coefficients - killing))
        else:
            residual = np.max(np.abs(killing), initial=0.0)

        if residual > 1e-8 * max(1.0, np.max(np.abs(killing), initial=0.0)):
            raise VerificationError('The Killing form of %s is not in the '
                                    'span of the invariant forms (residual '
                                    '%.3g).' % (self.name, residual))

        return basis

    def to_matrix(self, x):
        """Map coefficient vectors to matrices, sum_i x_i M_i.

        Arguments:
            x: coefficients, possibly with leading batch dimensions.

        Returns: an array of shape (..., d, d).
        """
        self._require_rep()
        x = self._check_vector(x)

        return np.einsum('...i,iab->...ab', x, self.matrix_rep)

    def from_matrix(self, m):
        """Recover coefficients from (batches of) matrices in the span of the
        representation, by least squares over the real and imaginary parts.

        Returns: an array of shape (..., l).
        """
        self._require_rep()

        if self._coordinate_solver is None:
            flat = self.matrix_rep.reshape(self.dim, -1).T
            stacked = np.concatenate([flat.real, flat.imag], axis=0)
            self._coordinate_solver = np.linalg.pinv(stacked)

        m = np.asarray(m)
        d = self.rep_dim
        batch = m.shape[:-2]
        flat_m = m.reshape(-1, d * d)
        stacked_m = np.concatenate([flat_m.real, flat_m.imag], axis=1)
        coefficients = stacked_m @ self._coordinate_solver.T

        return coefficients.reshape(batch + (self.dim,))

    def exp(self, x):
        """The group element exp(sum_i x_i M_i), batched."""
        return scipy.linalg.expm(self.to_matrix(x))

    def random_element(self, rng, scale=1.0):
        """Draw a group element exp(X) with X normally distributed.

        Arguments:
            rng: a numpy Generator.
            scale: the standard deviation of the coefficients of X.

        Returns: a group matrix.
        """
        return self.exp(scale * rng.normal(size=self.dim))

    def adjoint_matrices(self, g):
        """The matrices of Ad_g acting on coefficient vectors.

        Arguments:
            g: a group matrix or a batch of them, shape (..., d, d).

        Returns: an array of shape (..., l, l).
        """
        self._require_rep()
        g = np.asarray(g)
        g_inv = np.linalg.inv(g)
        conjugated = np.einsum('...ab,ibc,...cd->...iad', g, self.matrix_rep,
                               g_inv)
        columns = self.from_matrix(conjugated)

        return np.swapaxes(columns, -1, -2)

    def adjoint(self, g, x):
        """Ad_g x for a group matrix g and a coefficient vector x."""
        x = self._check_vector(x)

        return np.einsum('...ij,...j->...i', self.adjoint_matrices(g), x)

    def group_residual(self, g):
        """How far the matrices g are from being unitary (or orthogonal).

        Returns: max |g g^+ - I| over the batch.
        """
        g = np.asarray(g)
        eye = np.eye(g.shape[-1])
        product = np.einsum('...ab,...cb->...ac', g, g.conj())

        return float(np.max(np.abs(product - eye), initial=0.0))

    def trace_form(self):
        """The form kappa(X_i, X_j) = Re trace(M_i M_j) of the representation.
        """
        self._require_rep()
        m = self.matrix_rep

        return BilinearForm(self, np.einsum('iab,jba->ij', m, m).real,
                            name='trace')

    def direct_sum(self, other, name=None):
        """The direct sum of this algebra and another.

        Returns: a LieAlgebra whose basis is this basis followed by the
                 other's.
        """
        l1, l2 = self.dim, other.dim
        c = np.zeros((l1 + l2,) * 3)
        c[:l1, :l1, :l1] = self.c
        c[l1:, l1:, l1:] = other.c

        rep = None

        if self.matrix_rep is not None and other.matrix_rep is not None:
            d1, d2 = self.rep_dim, other.rep_dim
            dtype = np.result_type(self.matrix_rep, other.matrix_rep)
            rep = np.zeros((l1 + l2, d1 + d2, d1 + d2), dtype=dtype)
            rep[:l1, :d1, :d1] = self.matrix_rep
            rep[l1:, d1:, d1:] = other.matrix_rep

        return LieAlgebra(name if name else '%s+%s' % (self.name, other.name),
                          c, rep)

    def to_json(self):
        """Encode the algebra as JSON with sparse structure constants.

        Returns: the generated JSON.
        """
        triples = [[int(i), int(j), int(k), float(self.c[i, j, k])]
                   for i, j, k in zip(*np.nonzero(self.c))]

        config = dict(name=self.name, dim=self.dim, c=triples)

        if self.matrix_rep is not None:
            config['matrix_rep'] = _matrices_to_json(self.matrix_rep)

        return config

    @staticmethod
    def from_json(config):
        """Load an algebra from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.

        Returns: the validated LieAlgebra.
        """
        unknown = set(config) - {'name', 'dim', 'c', 'matrix_rep'}

        if unknown:
            raise InputError('Unknown keys in algebra: %s.' %
                             ', '.join(sorted(unknown)))

        try:
            dim = int(config['dim'])
            c = np.zeros((dim, dim, dim))

            for i, j, k, value in config['c']:
                c[int(i), int(j), int(k)] = float(value)
        except (KeyError, ValueError, TypeError, IndexError) as error:
            raise InputError('Malformed algebra JSON: %s' % error)

        rep = None

        if 'matrix_rep' in config:
            rep = _matrices_from_json(config['matrix_rep'])

        algebra = LieAlgebra(config.get('name', 'custom'), c, rep)
        algebra.validate()

        return algebra


class BilinearForm:
    """A bilinear form on a Lie algebra. Symmetry is not required."""

    def __init__(self, algebra, matrix, name=None):
        matrix = np.asarray(matrix, dtype=float)

        if matrix.shape != (algebra.dim, algebra.dim):
            raise InputError('A bilinear form on %s needs a %dx%d matrix, got '
                             '%s.' % (algebra.name, algebra.dim, algebra.dim,
                                      matrix.shape))

        self.algebra = algebra
        self.matrix = matrix
        self.name = name

    def __call__(self, x, y):
        return np.einsum('...i,ij,...j->...', x, self.matrix, y)

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and \
               self.algebra == other.algebra and \
               np.array_equal(self.matrix, other.matrix)

    def __add__(self, other):
        return BilinearForm(self.algebra, self.matrix + other.matrix)

    def __mul__(self, scalar):
        return BilinearForm(self.algebra, scalar * self.matrix)

    __rmul__ = __mul__

    def is_symmetric(self, tol=1e-12):
        return bool(np.max(np.abs(self.matrix - self.matrix.T),
                           initial=0.0) <= tol)

    def is_nondegenerate(self):
        s = np.linalg.svd(self.matrix, compute_uv=False)

        return bool(s.size and s[-1] > LieAlgebra.rank_threshold * s[0])

    def invariance_residual(self, xs, ys, zs):
        """The largest |B([Z,X],Y) + B(X,[Z,Y])| over the given samples.

        Arguments:
            xs, ys, zs: arrays of shape (samples, l).

        Returns: the residual relative to max(1, |B|) * |X| |Y| |Z|.
        """
        a = self.algebra
        values = self(a.bracket(zs, xs), ys) + self(xs, a.bracket(zs, ys))
        scale = max(1.0, float(np.max(np.abs(self.matrix), initial=0.0)))
        norms = np.linalg.norm(xs, axis=-1) * np.linalg.norm(ys, axis=-1) * \
            np.linalg.norm(zs, axis=-1)

        return float(np.max(np.abs(values) / (scale * np.maximum(norms, 1.0)),
                            initial=0.0))

    def to_json(self):
        return dict(algebra=self.algebra.name, name=self.name,
                    matrix=self.matrix.tolist())

    @staticmethod
    def from_json(config, algebra):
        """Load a bilinear form from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.
            algebra: the LieAlgebra the form lives on.

        Returns: the BilinearForm.
        """
        return BilinearForm(algebra, config['matrix'], config.get('name'))


class GroupEmbedding:
    """An injective homomorphism of matrix groups together with its
    derivative, the injection of Lie algebras dι.

    The algebra map is stored as an (l_target x l_source) matrix so that
    embedding a coefficient vector is a matrix-vector product.
    """

    def __init__(self, source, target, algebra_map, group_map=None,
                 name=None):
        """Create an embedding.

        Arguments:
            source: the LieAlgebra of the subgroup G.
            target: the LieAlgebra of the larger group G-hat.
            algebra_map: the matrix of d-iota.
            group_map: a function taking a batch of source group matrices to
                       target group matrices. If not given, source matrices
                       are used unchanged, which is right when the source
                       representation is already the restriction of the
                       target's.
            name: an identifier for JSON.
        """
        algebra_map = np.asarray(algebra_map, dtype=float)

        if algebra_map.shape != (target.dim, source.dim):
            raise InputError('The algebra map of an embedding %s -> %s must '
                             'have shape (%d, %d), got %s.' %
                             (source.name, target.name, target.dim,
                              source.dim, algebra_map.shape))

        self.source = source
        self.target = target
        self.algebra_map = algebra_map
        self.group_map = group_map
        self.name = name if name else '%s->%s' % (source.name, target.name)

    def __eq__(self, other):
        return isinstance(other, GroupEmbedding) and \
               self.source == other.source and self.target == other.target \
               and np.array_equal(self.algebra_map, other.algebra_map)

    @property
    def is_identity(self):
        return self.source == self.target and \
               np.array_equal(self.algebra_map, np.eye(self.source.dim))

    def validate(self):
        """Check that d-iota is injective and intertwines the brackets.

        Throws: InputError
        """
        rank = np.linalg.matrix_rank(self.algebra_map)

        if rank != self.source.dim:
            raise InputError('The algebra map of %s is not injective (rank %d '
                             'of %d).' % (self.name, rank, self.source.dim))

        eye = np.eye(self.source.dim)
        xs = np.repeat(eye, self.source.dim, axis=0)
        ys = np.tile(eye, (self.source.dim, 1))
        residual = self.bracket_residual(xs, ys)

        if residual > LieAlgebra.structure_tolerance:
            raise InputError('The algebra map of %s does not preserve '
                             'brackets (residual %.3g).' %
                             (self.name, residual))

    def bracket_residual(self, xs, ys):
        """max |d-iota [x, y] - [d-iota x, d-iota y]| over the samples."""
        lhs = self.embed_algebra(self.source.bracket(xs, ys))
        rhs = self.target.bracket(self.embed_algebra(xs),
                                  self.embed_algebra(ys))

        return float(np.max(np.abs(lhs - rhs), initial=0.0))

    def embed_algebra(self, x):
        """Push a source coefficient vector forward into target coordinates.

        Returns: d-iota x.
        """
        x = self.source._check_vector(x)

        return np.einsum('ij,...j->...i', self.algebra_map, x)

    def embed_group(self, g):
        """Map (a batch of) source group matrices into the target group."""
        if self.group_map is None:
            if self.source.rep_dim != self.target.rep_dim:
                raise InputError('The embedding %s has no group map.' %
                                 self.name)

            return np.asarray(g)

        return self.group_map(np.asarray(g))

    def metric(self):
        """The inner product on the target algebra used for projections:
        minus the Killing form when that is nondegenerate, the coefficient
        inner product otherwise.
        """
        killing = self.target.killing_form()

        if killing.is_nondegenerate():
            return -killing.matrix

        return np.eye(self.target.dim)

    def projection(self):
        """The orthogonal projection of the target algebra onto the image of
        d-iota, written in source coordinates.

        Returns: an (l_source x l_target) matrix P with P d-iota = I.
        """
        a = self.algebra_map
        w = self.metric()

        return np.linalg.solve(a.T @ w @ a, a.T @ w)

    def reduce_algebra(self, x):
        """Project target coefficient vectors onto d-iota(g), in source
        coordinates.
        """
        return np.einsum('ij,...j->...i', self.projection(), x)

    def to_json(self):
        return dict(name=self.name, source=self.source.name,
                    target=self.target.name,
                    algebra_map=self.algebra_map.tolist())

    @staticmethod
    def identity(algebra):
        """The identity embedding of an algebra's group into itself."""
        return GroupEmbedding(algebra, algebra, np.eye(algebra.dim),
                              group_map=lambda g: g,
                              name='id(%s)' % algebra.name)


class CoherentEmbedding:
    """A basic extension together with theta: G-hat/G -> g-hat satisfying
    theta(aG) = Ad_a(theta(G)). Higgs fields are built from it.
    """

    # Coherence residual allowed on sampled cosets.
    coherence_tolerance = 1e-10

    def __init__(self, embedding, theta_origin, tilt_axis=None):
        """Create a coherent embedding.

        Arguments:
            embedding: the GroupEmbedding G -> G-hat.
            theta_origin: theta(G) as target coefficients.
            tilt_axis: the target direction used as the second Euler axis by
                       theta_star. Defaults to the first target basis
                       vector.
        """
        self.embedding = embedding
        self.theta_origin = embedding.target._check_vector(theta_origin)

        if tilt_axis is None:
            tilt_axis = np.eye(embedding.target.dim)[0]

        self.tilt_axis = embedding.target._check_vector(tilt_axis)

    @property
    def target(self):
        return self.embedding.target

    def theta(self, a):
        """theta(aG) = Ad_a theta(G) for a target group matrix a."""
        return self.target.adjoint(a, self.theta_origin)

    def coherence_residual(self, rng, samples=32, scale=1.0):
        """Check that theta is well defined on cosets.

        Draws random a in G-hat and h in G and compares theta(a iota(h))
        with theta(a).

        Returns: the largest difference found.
        """
        residual = 0.0
        source = self.embedding.source

        for _ in range(samples):
            a = self.target.random_element(rng, scale)
            h = self.embedding.embed_group(source.random_element(rng, scale))
            difference = self.theta(a @ h) - self.theta(a)
            residual = max(residual, float(np.max(np.abs(difference))))

        return residual

    def check_coherence(self, rng, samples=32):
        """Throws: PreconditionError if theta is not coherent."""
        residual = self.coherence_residual(rng, samples)

        if residual > CoherentEmbedding.coherence_tolerance:
            raise PreconditionError('theta is not constant on cosets of %s '
                                    '(residual %.3g).' %
                                    (self.embedding.name, residual))

        return residual

    def euler_element(self, phi, alpha, psi=0.0):
        """The group element exp(phi Z) exp(alpha X) exp(psi Z), where Z is
        the embedded generator and X the tilt axis.
        """
        z = self.embedding.algebra_map[:, 0]
        target = self.target

        return target.exp(phi * z) @ target.exp(alpha * self.tilt_axis) @ \
            target.exp(psi * z)

    def theta_star(self, phi, alpha, psi=0.0):
        """The normalized Higgs field for the given Euler angles.

        Returns: the target coefficient vector Ad_a theta(G). For
                 so(2) -> so(3) this is (sin phi sin alpha,
                 -cos phi sin alpha, cos alpha).
        """
        return self.theta(self.euler_element(phi, alpha, psi))

    def theta_star_matrix(self, phi, alpha, psi=0.0):
        """theta_star as a matrix in the target representation."""
        return self.target.to_matrix(self.theta_star(phi, alpha, psi))


def _matrices_to_json(matrices):
    matrices = np.asarray(matrices)

    if np.iscomplexobj(matrices):
        return np.stack([matrices.real, matrices.imag], axis=-1).tolist()

    return matrices.tolist()


def _matrices_from_json(data):
    array = np.asarray(data, dtype=float)

    if array.ndim == 4 and array.shape[-1] == 2:
        return array[..., 0] + 1j * array[..., 1]

    return array
