import enum

import numpy as np

from .exceptions import ImproperlyConfigured, InvalidInput

MINIMUM_NUMPY = (1, 25)


def check_numpy_compatibility():
    """
    Verify that the installed numpy provides what concave_hankel uses
    (numpy.random.Generator, numpy.polynomial with ascending coefficients).
    """
    from . import __version__
    installed = tuple(int(part) for part in np.__version__.split('.')[:2])
    if installed < MINIMUM_NUMPY:
        raise ImproperlyConfigured(
            'concave-hankel {C} requires numpy {A}.{B} or later (found numpy {D}).'.format(
                A=MINIMUM_NUMPY[0],
                B=MINIMUM_NUMPY[1],
                C=__version__,
                D=np.__version__,
            )
        )


class Decision(enum.Enum):
    INSIDE = 'inside'
    BOUNDARY = 'boundary'
    OUTSIDE = 'outside'

    def __bool__(self):
        # "Inside or on" is the useful truth value for containment checks.
        return self is not Decision.OUTSIDE


def check_closed_disk(value, name, tol=1e-12):
    """Raise InvalidInput unless every entry of value has modulus <= 1."""
    if not np.all(np.abs(value) <= 1 + tol):
        raise InvalidInput('%s must lie in the closed unit disk (got max modulus %r).' % (
            name, float(np.max(np.abs(value))),
        ))


def unimodular(value):
    """Return value/|value|, or 1 where value vanishes."""
    value = np.asarray(value, dtype=complex)
    modulus = np.abs(value)
    return np.where(modulus > 0, value / np.where(modulus > 0, modulus, 1), 1)
