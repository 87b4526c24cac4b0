"""Exact rational helpers.

Functional values are computed in floating point and then converted exactly
into rationals, so everything built from them afterwards (sums, group
actions, group ring coefficients) is exact.
"""
import sympy

ZERO = sympy.Rational(0)
ONE = sympy.Rational(1)


def to_exact(x):
    """Convert a number into an exact rational.

    Floats are converted to the exact binary fraction they represent.

    Arguments:
        x: an int, float, string such as '3/4', or sympy Rational.

    Returns: a sympy Rational.
    """
    if isinstance(x, sympy.Rational):
        return x

    if isinstance(x, str):
        return sympy.Rational(x)

    if isinstance(x, int):
        return sympy.Integer(x)

    return sympy.Rational(float(x))


def exact_table(values):
    """Convert a sequence of numbers into a tuple of rationals."""
    return tuple(to_exact(v) for v in values)


def table_to_json(values):
    """Encode a table of rationals as strings 'p/q'."""
    return [str(v) for v in values]


def table_from_json(values):
    return tuple(sympy.Rational(v) for v in values)


def max_abs_difference(xs, ys):
    """The largest absolute difference between two equally long tables.

    Returns: a float, 0.0 for empty tables.
    """
    if len(xs) != len(ys):
        raise ValueError('Tables have different lengths (%d and %d).' %
                         (len(xs), len(ys)))

    return max((float(abs(x - y)) for x, y in zip(xs, ys)), default=0.0)
