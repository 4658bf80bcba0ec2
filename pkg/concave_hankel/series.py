import numpy as np

from .conf import settings
from .exceptions import InvalidInput, NonzeroConstantTerm, ZeroConstantTerm


class TruncatedSeries:
    """
    A power series c_0 + c_1 z + ... + c_N z^N + O(z^(N+1)) about z = 0.
    The coefficient array is read-only; every operation returns a new series.
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs, order=None):
        coeffs = np.array(coeffs, dtype=complex, ndmin=1)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise InvalidInput('A series needs a nonempty one-dimensional coefficient sequence.')
        if order is not None:
            if order < 0:
                raise InvalidInput('Series order must be nonnegative (got %r).' % order)
            coeffs = np.concatenate([coeffs[:order + 1], np.zeros(max(0, order + 1 - coeffs.size), dtype=complex)])
        coeffs.flags.writeable = False
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value, order):
        return cls([value], order=order)

    @classmethod
    def identity(cls, order):
        """The series of z."""
        return cls([0, 1], order=order)

    @property
    def order(self):
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self):
        return 'TruncatedSeries(%r, order=%d)' % (self.coeffs.tolist(), self.order)

    def __call__(self, z):
        # Horner evaluation of the polynomial part.
        return np.polynomial.polynomial.polyval(z, self.coeffs)

    def truncate(self, order):
        return TruncatedSeries(self.coeffs, order=min(order, self.order))

    def shift(self, k=1):
        """Multiply by z^k keeping the order."""
        return TruncatedSeries(np.concatenate([np.zeros(k, dtype=complex), self.coeffs]), order=self.order)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            n = min(self.order, other.order)
            return TruncatedSeries(self.coeffs[:n + 1] + other.coeffs[:n + 1])
        coeffs = self.coeffs.copy()
        coeffs[0] += other
        return TruncatedSeries(coeffs)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return multiply(self, other)
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def allclose(self, other, atol):
        n = min(self.order, len(other) - 1)
        return bool(np.all(np.abs(self.coeffs[:n + 1] - np.asarray(other, dtype=complex)[:n + 1]) <= atol))


def multiply(a, b):
    """Cauchy product truncated at the smaller order."""
    n = min(a.order, b.order)
    return TruncatedSeries(np.convolve(a.coeffs[:n + 1], b.coeffs[:n + 1])[:n + 1])


def reciprocal(a, epsilon=None):
    epsilon = settings.EPSILON if epsilon is None else epsilon
    a0 = a.coeffs[0]
    if abs(a0) <= epsilon:
        raise ZeroConstantTerm('Cannot invert a series with constant term %r.' % a0)
    r = np.zeros(a.order + 1, dtype=complex)
    r[0] = 1 / a0
    for k in range(1, a.order + 1):
        r[k] = -np.dot(a.coeffs[1:k + 1], r[k - 1::-1]) / a0
    return TruncatedSeries(r)


def exp(a, epsilon=None):
    """exp of a series whose constant term vanishes."""
    epsilon = settings.EPSILON if epsilon is None else epsilon
    if abs(a.coeffs[0]) > epsilon:
        raise NonzeroConstantTerm('exp() needs a vanishing constant term (got %r).' % a.coeffs[0])
    weighted = a.coeffs * np.arange(a.order + 1)
    e = np.zeros(a.order + 1, dtype=complex)
    e[0] = 1
    for k in range(1, a.order + 1):
        e[k] = np.dot(weighted[1:k + 1], e[k - 1::-1]) / k
    return TruncatedSeries(e)


def integrate(a):
    """Antiderivative vanishing at 0; the order grows by one."""
    return TruncatedSeries(np.concatenate([[0], a.coeffs / np.arange(1, a.order + 2)]))


def derivative(a):
    if a.order == 0:
        return TruncatedSeries([0])
    return TruncatedSeries(a.coeffs[1:] * np.arange(1, a.order + 1))


def taylor_from_samples(func, radius, n_terms, n_samples=None):
    """
    Taylor coefficients of func about 0 from its values on |z| = radius,
    i.e. the trapezoidal rule applied to Cauchy's integral formula.
    func must accept an array of points.
    """
    n_samples = settings.ORACLE_SAMPLES if n_samples is None else n_samples
    if radius <= 0:
        raise InvalidInput('The sampling radius must be positive (got %r).' % radius)
    if n_terms < 1 or n_samples < 4 * n_terms:
        raise InvalidInput('Need n_samples >= 4 * n_terms (got %d samples for %d terms).' % (n_samples, n_terms))
    nodes = radius * np.exp(2j * np.pi * np.arange(n_samples) / n_samples)
    values = np.asarray(func(nodes), dtype=complex)
    # fft computes sum_j v_j * omega^(-jk).
    coeffs = np.fft.fft(values)[:n_terms] / n_samples
    return TruncatedSeries(coeffs / radius ** np.arange(n_terms))


def central_difference(func, z, h=1e-5):
    """First and second derivative of func at z by central differences."""
    forward, center, backward = func(z + h), func(z), func(z - h)
    return (forward - backward) / (2 * h), (forward - 2 * center + backward) / h ** 2
