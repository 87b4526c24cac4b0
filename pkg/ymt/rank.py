"""Rank arithmetic for the space of linear YMT pairings.

The space of tensorial pairings on a trivial bundle is the module of
sections of Hom(L2 T*M (x) L2 T*M (x) E (x) E; R), whose fiber has rank
((n^2 - n)/2)^2 l^2. The bounds below add to this the number of extra
generators a projective module of that fiber rank can need over an
n-dimensional base.
"""
import sympy

from ymt.errors import InputError


class RankQuery:
    """A question about the rank of the space of linear YMT theories.

    Arguments mirror the data of a bundle over an n-dimensional base with an
    l-dimensional structure group: an optional connectivity q of the base,
    and at most one of the flags for which the bound is attained.
    """

    def __init__(self, n, l, q=None, contractible=False,
                 parallelizable_abelian=False):
        for name, value in [('n', n), ('l', l)]:
            if not isinstance(value, int) or isinstance(value, bool) or \
                    value < 0:
                raise InputError('%s must be a non-negative integer, got %r.'
                                 % (name, value))

        if q is not None and (not isinstance(q, int) or q < 1):
            raise InputError('q must be an integer >= 1, got %r.' % (q,))

        if contractible and parallelizable_abelian:
            raise InputError('At most one equality flag may be set.')

        self.n = n
        self.l = l
        self.q = q
        self.contractible = bool(contractible)
        self.parallelizable_abelian = bool(parallelizable_abelian)

    @property
    def equality(self):
        return self.contractible or self.parallelizable_abelian

    def to_json(self):
        return dict(n=self.n, l=self.l, q=self.q,
                    contractible=self.contractible,
                    parallelizable_abelian=self.parallelizable_abelian)

    @staticmethod
    def from_json(config):
        unknown = set(config) - {'n', 'l', 'q', 'contractible',
                                 'parallelizable_abelian'}

        if unknown:
            raise InputError('Unknown keys in rank query: %s.' %
                             ', '.join(sorted(unknown)))

        return RankQuery(config['n'], config['l'], config.get('q'),
                         config.get('contractible', False),
                         config.get('parallelizable_abelian', False))


def fiber_rank(n, l):
    """The rank ((n^2 - n)/2)^2 l^2 of the bundle of tensorial pairings.

    Returns: 0 for n < 2, there are no 2-forms.
    """
    if n < 0 or l < 0:
        raise InputError('n and l must be non-negative.')

    return ((n * n - n) // 2) ** 2 * l * l


def rank_upper_bound(query):
    """Bound the rank of the space of linear YMT theories.

    Three cases:
        general:      fiber + n + 1, attained or not
        q-connected:  fiber + (n + 1)/(q + 1) + 1, strict, kept rational
        equality:     fiber + 1 when the base is contractible, or
                      parallelizable with an abelian group

    Arguments:
        query: a RankQuery.

    Returns: a dict with the exact value (sympy Rational), strict and
             equality flags and which case applied.

    Throws: InputError when both q and an equality flag are given.
    """
    if query.q is not None and query.equality:
        raise InputError('No bound is known for a q-connected base that is '
                         'also in an equality case.')

    fiber = sympy.Integer(fiber_rank(query.n, query.l))

    if query.equality:
        return dict(value=fiber + 1, strict=False, equality=True,
                    kind='equality')

    if query.q is not None:
        value = fiber + sympy.Rational(query.n + 1, query.q + 1) + 1

        return dict(value=value, strict=True, equality=False,
                    kind='q_connected')

    return dict(value=fiber + query.n + 1, strict=False, equality=False,
                kind='general')


def bound_to_json(bound):
    """Encode the result of rank_upper_bound for emission."""
    return dict(value=str(bound['value']), approx=float(bound['value']),
                strict=bound['strict'], equality=bound['equality'],
                kind=bound['kind'])


def enumerate_low_rank(z, n_max, l_max):
    """Find the (n, l) whose equality-case rank fiber + 1 is at most z.

    Arguments:
        z: the rank budget, at least 1.
        n_max: the largest base dimension to try.
        l_max: the largest group dimension to try.

    Returns: the sorted list of pairs with 2 <= n <= n_max, 1 <= l <= l_max.
    """
    if z < 1:
        raise InputError('z must be at least 1, got %d.' % z)

    return [(n, l) for n in range(2, n_max + 1) for l in range(1, l_max + 1)
            if fiber_rank(n, l) + 1 <= z]


def rank_figure_points(z, n_max, l_max):
    """Rows (n, l, rank_bound) for plotting the low rank pairs."""
    return [(n, l, fiber_rank(n, l) + 1)
            for n, l in enumerate_low_rank(z, n_max, l_max)]
