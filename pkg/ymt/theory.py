"""Yang-Mills-type action functionals."""
import itertools

import numpy as np

from ymt.cochain import AlgebraCochain1, AlgebraCochain2, coboundary, cup, \
    curvature
from ymt.errors import InputError, PreconditionError, VerificationError
from ymt.links import GaugeTransform, LinkField
from ymt.pairing import PairingSpec
from ymt.verbosity import Verbosity, log


class YMTTheory:
    """The action S[D] = <<F_D, F_D>> for a chosen pairing of curvatures."""

    # Relative deviation under which an action counts as gauge invariant.
    invariance_tolerance = 1e-9

    def __init__(self, lattice, algebra, pairing=None, label=None):
        """Create a theory.

        Arguments:
            lattice: the Lattice.
            algebra: the LieAlgebra of the gauge group.
            pairing: a PairingSpec, the Killing pairing by default.
            label: a name for reports.
        """
        if pairing is None:
            pairing = PairingSpec.killing(lattice, algebra)

        if pairing.algebra != algebra or pairing.lattice != lattice:
            raise InputError('The pairing lives on %r (%s) but the theory on '
                             '%r (%s).' % (pairing.lattice,
                                           pairing.algebra.name, lattice,
                                           algebra.name))

        self.lattice = lattice
        self.algebra = algebra
        self.pairing = pairing
        self.label = label if label else 'ymt(%s, %s)' % (algebra.name,
                                                          pairing.label)

    def __repr__(self):
        return 'YMTTheory(%s)' % self.label

    def _check_field(self, d):
        if not isinstance(d, (AlgebraCochain1, LinkField)):
            raise InputError('Expected a connection field, got %s.' %
                             type(d).__name__)

        if d.lattice != self.lattice or d.algebra != self.algebra:
            raise InputError('The field lives on %r (%s) but %s on %r (%s).'
                             % (d.lattice, d.algebra.name, self.label,
                                self.lattice, self.algebra.name))

    def field_strength(self, d):
        """The curvature of a connection in either representation.

        Throws: SingularityError for link fields with a plaquette holonomy
                on the branch cut.
        """
        self._check_field(d)

        if isinstance(d, LinkField):
            return d.plaquette_curvature()

        return curvature(d)

    def integrated_pairing(self, w1, w2):
        return self.pairing.evaluate(w1, w2)

    def ymt_action(self, d):
        f = self.field_strength(d)

        return self.integrated_pairing(f, f)

    def __call__(self, d):
        return self.ymt_action(d)

    def gauge_invariance_report(self, d, trials=32, seed=None, scale=1.0):
        """Compare the action of a link field with that of random gauge
        transforms of it.

        Arguments:
            d: a LinkField.
            trials: how many random gauge transforms to try.
            seed: the seed for the gauge transforms.
            scale: the coefficient scale of the random transforms.

        Returns: a dict with max_deviation, invariant, the reference value
                 and the seed.
        """
        if trials < 1:
            raise InputError('Need at least one trial.')

        if not isinstance(d, LinkField):
            raise InputError('Gauge invariance is checked on link fields.')

        rng = np.random.default_rng(seed)
        reference = self.ymt_action(d)
        deviation = 0.0

        for trial in range(trials):
            g = GaugeTransform.random(self.lattice, self.algebra, rng, scale)
            value = self.ymt_action(d.gauge_transform(g))
            deviation = max(deviation, abs(value - reference))

            log.print('gauge trial %d/%d: deviation %.3g',
                      (trial + 1, trials, abs(value - reference)),
                      Verbosity.FULL)

        bound = YMTTheory.invariance_tolerance * abs(reference) + 1e-12

        return dict(max_deviation=deviation, invariant=deviation <= bound,
                    value=reference, trials=trials, seed=seed)

    def bf_action(self, d, b):
        """S_BF(D, B) = <<F_D, B>>.

        Throws: InputError unless the lattice is 4 dimensional.
        """
        if self.lattice.n != 4:
            raise InputError('BF theory needs a 4 dimensional lattice, this '
                             'one has dimension %d.' % self.lattice.n)

        return self.integrated_pairing(self.field_strength(d), b)

    def topological_term(self, d):
        """The sum over 4-cells of kappa(F cup F), kappa the trace form.

        The cup product of 2-cochains on a cube splits its four directions
        into a front face I and a back face J:

            (F cup F)(x) = sum sign(I, J) kappa(F_I(x), F_J(x + e_I)).

        Throws: InputError unless the lattice is 4 dimensional and the
                algebra has a matrix representation.
        """
        if self.lattice.n != 4:
            raise InputError('The topological term needs a 4 dimensional '
                             'lattice.')

        if self.algebra.matrix_rep is None:
            raise InputError('The topological term needs a matrix '
                             'representation of %s.' % self.algebra.name)

        f = self.field_strength(d).values
        kappa = self.algebra.trace_form().matrix
        lattice = self.lattice
        total = np.zeros(tuple(lattice.shape))

        for front in itertools.combinations(range(4), 2):
            back = tuple(mu for mu in range(4) if mu not in front)
            sign = _permutation_sign(front + back)
            later = f[back[0], back[1]]

            for mu in front:
                later = lattice.shift(later, mu)

            total += sign * np.einsum('...i,ij,...j->...',
                                      f[front[0], front[1]], kappa, later)

        return float(np.sum(total.reshape(-1))) * lattice.volume_weight

    def full_action(self, d):
        """The Yang-Mills action plus the topological term."""
        return self.ymt_action(d) + self.topological_term(d)

    def linearized_operator(self, d):
        """The matrix of X -> dX + cup(D, X), which sends D itself to F_D.

        Columns follow the C order flattening of AlgebraCochain1.values,
        rows that of AlgebraCochain2.plane_values().
        """
        basis = AlgebraCochain1.zeros(self.lattice, self.algebra)
        size = basis.values.size
        columns = []

        for k in range(size):
            values = np.zeros(size)
            values[k] = 1
            x = AlgebraCochain1(self.lattice, self.algebra,
                                values.reshape(basis.values.shape))
            columns.append((coboundary(x) + cup(d, x)).plane_values()
                           .reshape(-1))

        return np.stack(columns, axis=1)

    def to_json(self):
        return dict(label=self.label, lattice=self.lattice.to_json(),
                    algebra=self.algebra.name,
                    pairing=self.pairing.to_json())


class ParameterizedTheory:
    """A family of action functionals indexed by a finite parameter set."""

    def __init__(self, base, parameter_set, functional_of, label=None):
        """Create a parameterized theory.

        Arguments:
            base: the YMTTheory this family is built over.
            parameter_set: a list of hashable parameter tokens.
            functional_of: a function (parameter, configuration) -> real.
            label: a name for reports.
        """
        self.base = base
        self.parameter_set = list(parameter_set)
        self.functional_of = functional_of
        self.label = label if label else 'parameterized(%s)' % base.label

        self.adjoint_residual = None
        self.condition_number = None

    def evaluate(self, eps, configuration):
        if eps not in self.parameter_set:
            raise InputError('%r is not a parameter of %s.' %
                             (eps, self.label))

        return self.functional_of(eps, configuration)

    def differential_operator(self, eps, d):
        """The constant assignment eps -> d*_D d_D as a matrix acting on
        1-cochain coefficients.
        """
        if eps not in self.parameter_set:
            raise InputError('%r is not a parameter of %s.' %
                             (eps, self.label))

        operator = self.base.linearized_operator(d)

        return _pairing_adjoint(operator, self.base.pairing.gram_matrix()) \
            @ operator


def _pairing_adjoint(operator, gram):
    # With <a, b>_2 = a^T G b and the coefficient inner product on
    # 1-cochains, <L x, y>_2 = <x, L* y>_1 for L* = L^T G.
    return operator.T @ gram


def wrap_parameterized(t, parameter_set, probe=None, seed=None):
    """Regard a YMT theory as a parameterized theory whose value does not
    depend on the parameter.

    The pairing must be perfect on the cochain space. d*_D is built as the
    pairing adjoint of the linearized curvature operator L, so
    <<D, d*_D d_D D>> equals <<L D, L D>> by construction. The check that
    can fail compares <<L D, L D>> with the action of a sample connection D.

    Arguments:
        t: the YMTTheory.
        parameter_set: any finite list of parameters, possibly empty.
        probe: the AlgebraCochain1 used for the check; random if not given.
        seed: the seed for the random probe.

    Returns: a ParameterizedTheory.

    Throws: PreconditionError if the pairing is degenerate,
            VerificationError if the adjoint identity fails.
    """
    condition = t.pairing.condition_number()

    if not np.isfinite(condition):
        raise PreconditionError('The pairing %s is degenerate on the cochain '
                                'space; a perfect pairing is required.' %
                                t.pairing.label)

    if probe is None:
        probe = AlgebraCochain1.random(t.lattice, t.algebra,
                                       np.random.default_rng(seed), 0.5)

    operator = t.linearized_operator(probe)
    gram = t.pairing.gram_matrix()
    d_vector = probe.values.reshape(-1)
    image = operator @ d_vector

    lhs = float(image @ gram @ image)
    rhs = float(d_vector @ (_pairing_adjoint(operator, gram) @ image))
    action = t.ymt_action(probe)

    scale = max(1.0, abs(lhs))
    residual = max(abs(lhs - rhs), abs(lhs - action)) / scale

    if residual > 1e-9:
        raise VerificationError('The adjoint identity fails for %s (relative '
                                'residual %.3g).' % (t.label, residual))

    wrapped = ParameterizedTheory(t, parameter_set,
                                  lambda eps, d: t.ymt_action(d),
                                  label='wrapped(%s)' % t.label)
    wrapped.adjoint_residual = residual
    wrapped.condition_number = condition

    return wrapped


def _permutation_sign(permutation):
    sign = 1
    p = list(permutation)

    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign

    return sign


def integrated_pairing(t, w1, w2):
    return t.integrated_pairing(w1, w2)


def ymt_action(t, d):
    return t.ymt_action(d)


def gauge_invariance_report(t, d, trials=32, seed=None):
    return t.gauge_invariance_report(d, trials, seed)


def bf_action(t, d, b):
    return t.bf_action(d, b)


def topological_term(t, d):
    return t.topological_term(d)
