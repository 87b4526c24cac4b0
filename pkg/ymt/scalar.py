"""Scalar invariance of YMT actions: for which t does S[t D] scale like
t S[D], and how degenerate is a pairing on a given connection.
"""
import numpy as np
import sympy

from ymt.cochain import AlgebraCochain1, coboundary, cup_bracket
from ymt.errors import InputError
from ymt.verbosity import Verbosity, log

# Returned by invariance_roots when every real t is a root.
ALL_REALS = 'all-reals'


class ScalarPolynomial:
    """The coefficients a = <<dD, dD>>, b = <<dD, h>> (symmetrized),
    c = <<h, h>>, with h = 1/2 [D ^ D], of the polynomial

        p(t) = a (t^2 - t) + b (2 t^3 - t) + c (t^4 - t).
    """

    # Width of the isolating intervals of the nonzero roots.
    root_precision = 1e-12

    # Roots closer than this are reported once.
    root_separation = 1e-10

    def __init__(self, a, b, c):
        self.a = float(a)
        self.b = float(b)
        self.c = float(c)

        if not all(np.isfinite([self.a, self.b, self.c])):
            raise InputError('Polynomial coefficients must be finite.')

    def __repr__(self):
        return 'ScalarPolynomial(a=%g, b=%g, c=%g)' % (self.a, self.b, self.c)

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0

    def __call__(self, t):
        a, b, c = self.a, self.b, self.c

        return a * (t * t - t) + b * (2 * t ** 3 - t) + c * (t ** 4 - t)

    def scaled_action(self, t):
        """a t^2 + 2 b t^3 + c t^4, the action of t D."""
        return self.a * t ** 2 + 2 * self.b * t ** 3 + self.c * t ** 4

    def reduced(self):
        """p(t) / t as an exact sympy polynomial,
        c t^3 + 2b t^2 + a t - (a + b + c).
        """
        t = sympy.Symbol('t')
        a, b, c = (sympy.Rational(v) for v in (self.a, self.b, self.c))

        return sympy.Poly(c * t ** 3 + 2 * b * t ** 2 + a * t - (a + b + c),
                          t, domain='QQ')

    def roots(self):
        return invariance_roots(self)

    def to_json(self):
        return dict(a=self.a, b=self.b, c=self.c)

    @staticmethod
    def from_json(config):
        return ScalarPolynomial(config['a'], config['b'], config['c'])


def scalar_poly(base, d):
    """The scalar invariance polynomial of a theory at a connection.

    Arguments:
        base: the YMTTheory.
        d: an AlgebraCochain1; link fields have no split of F into dD and
           the bracket term.

    Returns: the ScalarPolynomial.

    Throws: InputError for link fields.
    """
    if not isinstance(d, AlgebraCochain1):
        raise InputError('The scalar polynomial needs an algebra valued '
                         'connection, got %s.' % type(d).__name__)

    base._check_field(d)
    dd = coboundary(d)
    h = cup_bracket(d)
    pair = base.integrated_pairing

    return ScalarPolynomial(pair(dd, dd), 0.5 * (pair(dd, h) + pair(h, dd)),
                            pair(h, h))


def invariance_roots(p):
    """The real roots of p(t) = a(t^2 - t) + b(2t^3 - t) + c(t^4 - t).

    t = 0 is always a root. The others are the roots of the exact reduced
    cubic, isolated over the rationals to root_precision and reported at
    the midpoints of their intervals.

    Returns: the ascending list of roots, at most 4 of them, or ALL_REALS
             when a = b = c = 0.
    """
    if p.is_zero():
        return ALL_REALS

    reduced = p.reduced()
    found = [0.0]

    if reduced.degree() > 0:
        for (low, high), _ in reduced.intervals(
                eps=ScalarPolynomial.root_precision):
            found.append(float((low + high) / 2))

    roots = []

    for r in sorted(found):
        if not roots or r - roots[-1] > ScalarPolynomial.root_separation:
            roots.append(r)

    return roots


def sample_invariance_roots(theory, samples):
    """Intersect the invariance roots over several connections.

    A scalar t only survives if it is a root for every sample, so the result
    can refute but never prove membership in the global invariance set.

    Returns: a dict with the surviving roots, the per-sample roots and the
             sample count.
    """
    if not samples:
        raise InputError('Need at least one sample connection.')

    per_sample = [invariance_roots(scalar_poly(theory, d)) for d in samples]
    common = None

    for roots in per_sample:
        if roots == ALL_REALS:
            continue

        if common is None:
            common = list(roots)
        else:
            common = [r for r in common
                      if any(abs(r - s) <= ScalarPolynomial.root_separation
                             for s in roots)]

    log.print('Invariance roots over %d samples: %s',
              (len(samples), common if common is not None else ALL_REALS),
              Verbosity.FULL)

    return dict(roots=common if common is not None else ALL_REALS,
                per_sample=per_sample, samples=len(samples))


def semi_nondegeneracy_probe(theory, d, atol=1e-12):
    """Evaluate <dD, dD> cell by cell.

    A connection is semi-nondegenerate for the pairing when this density
    vanishes nowhere. Only the sign pattern on the finite lattice is
    reported; nothing is inferred about sign constancy.

    Returns: a dict with the per-cell values, the number of vanishing cells,
             the integrated value and the verdict.
    """
    if not isinstance(d, AlgebraCochain1):
        raise InputError('The probe needs an algebra valued connection.')

    dd = coboundary(d)
    density = theory.pairing.density(dd, dd)
    vanishing = int(np.sum(np.abs(density) <= atol))

    return dict(cells=density.reshape(-1).tolist(), vanishing=vanishing,
                integrated=theory.integrated_pairing(dd, dd),
                semi_nondegenerate=vanishing == 0)


def is_proper(theory, samples, atol=1e-12):
    """Check the properness conditions on sample connections.

    On each sample <dD, dD> and <h, h> must vanish nowhere, and <dD, h>
    must either vanish everywhere or nowhere.

    Returns: a dict with proper and one entry per sample.
    """
    reports = []

    for d in samples:
        dd = coboundary(d)
        h = cup_bracket(d)
        counts = {}

        for name, (w1, w2) in [('dd', (dd, dd)), ('hh', (h, h)),
                               ('dh', (dd, h))]:
            density = theory.pairing.density(w1, w2)
            counts[name] = int(np.sum(np.abs(density) > atol))

        cells = theory.lattice.n_sites
        proper = counts['dd'] == cells and counts['hh'] == cells and \
            counts['dh'] in (0, cells)
        reports.append(dict(nonvanishing=counts, cells=cells, proper=proper))

    return dict(proper=all(r['proper'] for r in reports), samples=reports)
