"""Finite groups acting additively on the reals, and their group rings with
rational coefficients.
"""
import sympy

from ymt.errors import InputError, PreconditionError
from ymt.exact import ONE, ZERO, to_exact


class FiniteGroup:
    """A finite group given by its Cayley table over the elements
    0, ..., order - 1, with 0 the neutral element.
    """

    def __init__(self, name, table):
        """Create a finite group and check the group axioms.

        Arguments:
            name: a name for reports.
            table: table[a][b] is the index of the product a b.

        Throws: InputError if the table does not describe a group with
                neutral element 0.
        """
        order = len(table)

        if order < 1 or any(len(row) != order for row in table):
            raise InputError('A Cayley table must be square and nonempty.')

        self.name = name
        self.table = [list(row) for row in table]
        self.order = order

        if any(self.table[0][a] != a or self.table[a][0] != a
               for a in range(order)):
            raise InputError('0 is not the neutral element of %s.' % name)

        for row in self.table:
            if sorted(row) != list(range(order)):
                raise InputError('The table of %s is not a Latin square.' %
                                 name)

        for a in range(order):
            for b in range(order):
                for c in range(order):
                    if self.mul(self.mul(a, b), c) != \
                            self.mul(a, self.mul(b, c)):
                        raise InputError('The table of %s is not '
                                         'associative.' % name)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash((self.name, self.order))

    def __repr__(self):
        return 'FiniteGroup(%s)' % self.name

    @property
    def elements(self):
        return list(range(self.order))

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return self.table[a][b]

    def inverse(self, a):
        return self.table[a].index(0)

    @staticmethod
    def cyclic(n):
        """The cyclic group Z/n with k standing for k mod n."""
        if n < 1:
            raise InputError('Z/n needs n >= 1, got %d.' % n)

        return FiniteGroup('Z/%d' % n,
                           [[(a + b) % n for b in range(n)] for a in range(n)])

    def to_json(self):
        return dict(name=self.name, table=self.table)

    @staticmethod
    def from_json(config):
        """Load a finite group from JSON.

        Arguments:
            config: the JSON dictionary loaded from file.

        Returns: the FiniteGroup.
        """
        if 'cyclic' in config:
            return FiniteGroup.cyclic(int(config['cyclic']))

        return FiniteGroup(config.get('name', 'custom'), config['table'])


class AdditiveAction:
    """An action of a finite group on the reals, a -> (x -> a * x).

    The shipped actions multiply by a rational unit r_a. A unit of finite
    order in the rationals is +1 or -1, so for Z/n the only nontrivial
    choice sends a generator to -1, and this needs n even.
    """

    # Sample points used to test additivity.
    samples = [sympy.Rational(p, q) for p, q in
               [(0, 1), (1, 1), (-3, 2), (7, 5), (2, 3), (-11, 7)]]

    def __init__(self, group, multipliers=None, function=None, name=None):
        """Create an action.

        Arguments:
            group: the FiniteGroup.
            multipliers: the unit r_a for each element, so that a acts by
                         x -> r_a x.
            function: alternatively, a function (a, x) -> real. Such
                      actions are checked for additivity when used.
            name: a name for reports.
        """
        if (multipliers is None) == (function is None):
            raise InputError('Give either multipliers or a function.')

        self.group = group
        self.function = function
        self.name = name if name else 'action'

        if multipliers is not None:
            multipliers = [to_exact(r) for r in multipliers]

            if len(multipliers) != group.order:
                raise InputError('Need %d multipliers, got %d.' %
                                 (group.order, len(multipliers)))

            for a in group.elements:
                for b in group.elements:
                    if multipliers[group.mul(a, b)] != \
                            multipliers[a] * multipliers[b]:
                        raise InputError('The multipliers of %s are not a '
                                         'homomorphism.' % self.name)

        self.multipliers = multipliers

    def __call__(self, a, x):
        if self.multipliers is not None:
            return self.multipliers[a] * x

        return to_exact(self.function(a, x))

    @staticmethod
    def trivial(group):
        return AdditiveAction(group, [ONE] * group.order, name='trivial')

    @staticmethod
    def sign(n=2):
        """Z/n acting by x -> (-1)^k x, which needs n even.

        Throws: InputError for odd n.
        """
        if n % 2:
            raise InputError('Z/%d has no sign action; n must be even.' % n)

        return AdditiveAction(FiniteGroup.cyclic(n),
                              [(-ONE) ** k for k in range(n)], name='sign')

    @staticmethod
    def cyclic(n):
        """The shipped action of Z/n: the sign action for even n, the
        trivial one for odd n.
        """
        if n % 2 == 0:
            return AdditiveAction.sign(n)

        return AdditiveAction.trivial(FiniteGroup.cyclic(n))

    def additivity_residual(self, a, values=None):
        """The largest |a*(x + y) - a*x - a*y| over pairs of sample values.
        """
        values = list(values) if values is not None else []
        values = AdditiveAction.samples + [to_exact(v) for v in values]
        residual = ZERO

        for x in values:
            for y in values:
                residual = max(residual,
                               abs(self(a, x + y) - self(a, x) - self(a, y)))

        return residual

    def check_additive(self, a, values=None):
        """Throws: PreconditionError if a does not act additively."""
        residual = self.additivity_residual(a, values)

        if residual != 0:
            raise PreconditionError('The action of %d under %s is not '
                                    'additive (residual %s).' %
                                    (a, self.name, residual))

    def to_json(self):
        config = dict(name=self.name, group=self.group.to_json())

        if self.multipliers is not None:
            config['multipliers'] = [str(r) for r in self.multipliers]

        return config

    @staticmethod
    def from_json(config):
        group = FiniteGroup.from_json(config['group'])

        if 'multipliers' not in config:
            raise InputError('Only multiplier actions can be read from '
                             'JSON.')

        return AdditiveAction(group, config['multipliers'],
                              name=config.get('name'))


class GroupRingElement:
    """A finitely supported rational combination sum_a x_a a of group
    elements.
    """

    def __init__(self, group, coefficients=None, action=None):
        """Create a group ring element.

        Arguments:
            group: the FiniteGroup.
            coefficients: a dict from group elements to rationals. Zero
                          coefficients are dropped.
            action: the AdditiveAction through which the element acts on
                    extensions, if it should carry one.
        """
        if action is not None and action.group != group:
            raise InputError('The action is for %r, not %r.' %
                             (action.group, group))

        self.group = group
        self.action = action
        self.coefficients = {}

        for a, x in (coefficients or {}).items():
            if a not in range(group.order):
                raise InputError('%r is not an element of %s.' % (a, group))

            x = to_exact(x)

            if x != 0:
                self.coefficients[a] = x

    def __repr__(self):
        terms = ['%s*[%d]' % (x, a) for a, x in sorted(self.coefficients
                                                        .items())]

        return 'GroupRingElement(%s)' % (' + '.join(terms) if terms else '0')

    def __eq__(self, other):
        return isinstance(other, GroupRingElement) and \
               self.group == other.group and \
               self.coefficients == other.coefficients

    def __hash__(self):
        return hash(tuple(sorted(self.coefficients.items())))

    def _check(self, other):
        if not isinstance(other, GroupRingElement) or \
                other.group != self.group:
            raise InputError('Cannot combine elements of different group '
                             'rings.')

    @staticmethod
    def zero(group, action=None):
        return GroupRingElement(group, action=action)

    @staticmethod
    def unit(group, action=None):
        return GroupRingElement(group, {group.identity: ONE}, action)

    @staticmethod
    def of(group, a, x=ONE, action=None):
        """The element x a."""
        return GroupRingElement(group, {a: x}, action)

    def coefficient(self, a):
        return self.coefficients.get(a, ZERO)

    def __add__(self, other):
        self._check(other)
        coefficients = dict(self.coefficients)

        for a, x in other.coefficients.items():
            coefficients[a] = coefficients.get(a, ZERO) + x

        return GroupRingElement(self.group, coefficients, self.action)

    def __neg__(self):
        return GroupRingElement(self.group, {a: -x for a, x in
                                             self.coefficients.items()},
                                self.action)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """The convolution product, or scaling by a rational."""
        if not isinstance(other, GroupRingElement):
            r = to_exact(other)

            return GroupRingElement(self.group, {a: r * x for a, x in
                                                 self.coefficients.items()},
                                    self.action)

        self._check(other)
        coefficients = {}

        for a, x in self.coefficients.items():
            for b, y in other.coefficients.items():
                ab = self.group.mul(a, b)
                coefficients[ab] = coefficients.get(ab, ZERO) + x * y

        return GroupRingElement(self.group, coefficients, self.action)

    def __rmul__(self, scalar):
        return self * scalar

    def is_zero(self):
        return not self.coefficients

    def to_json(self):
        return dict(group=self.group.to_json(),
                    coefficients=[[a, str(x)] for a, x in
                                  sorted(self.coefficients.items())])

    @staticmethod
    def from_json(config):
        group = FiniteGroup.from_json(config['group'])

        return GroupRingElement(group, {int(a): sympy.Rational(x)
                                        for a, x in config['coefficients']})
