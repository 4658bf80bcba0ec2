import os
from contextlib import contextmanager

from .exceptions import ImproperlyConfigured

ENVIRONMENT_PREFIX = 'CONCAVE_HANKEL_'

DEFAULTS = {
    # Smallest denominator or constant term treated as nonzero.
    'EPSILON': 1e-14,
    'SERIES_ORDER': 8,
    'ORACLE_SAMPLES': 256,
    # Sampling circles for functions with a pole at p have radius factor * p.
    'ORACLE_RADIUS_FACTOR': 0.5,
    'ALGEBRA_TOLERANCE': 1e-9,
    'ORACLE_TOLERANCE': 1e-7,
    'MEMBERSHIP_TOLERANCE': 1e-9,
    'CONSISTENCY_TOLERANCE': 1e-7,
    'GRID': 24,
    'MODULUS_GRID': 8,
    'ITERS': 200,
    'STARTS': 16,
    'RANDOM_STARTS': 2048,
    'DIRECTION_BINS': 256,
    'SAMPLES': 1000,
    'SEED': 1,
    'BOUNDARY_RATE': 0.1,
    'P_SWEEP': tuple(round(0.05 * k, 2) for k in range(1, 20)),
}


def _positive(value):
    return value > 0


def _in_open_unit_interval(value):
    return 0 < value < 1


# setting name -> (predicate, description used in error messages)
VALIDATORS = {
    'EPSILON': (_positive, 'a positive number'),
    'SERIES_ORDER': (lambda v: v >= 3, 'an integer >= 3'),
    'ORACLE_SAMPLES': (lambda v: v >= 16, 'an integer >= 16'),
    'ORACLE_RADIUS_FACTOR': (_in_open_unit_interval, 'a number in (0, 1)'),
    'ALGEBRA_TOLERANCE': (_positive, 'a positive number'),
    'ORACLE_TOLERANCE': (_positive, 'a positive number'),
    'MEMBERSHIP_TOLERANCE': (_positive, 'a positive number'),
    'CONSISTENCY_TOLERANCE': (_positive, 'a positive number'),
    'GRID': (lambda v: v >= 8, 'an integer >= 8'),
    'MODULUS_GRID': (lambda v: v >= 2, 'an integer >= 2'),
    'ITERS': (lambda v: v >= 0, 'a nonnegative integer'),
    'STARTS': (lambda v: v >= 1, 'a positive integer'),
    'RANDOM_STARTS': (lambda v: v >= 0, 'a nonnegative integer'),
    'DIRECTION_BINS': (lambda v: v >= 3, 'an integer >= 3'),
    'SAMPLES': (lambda v: v >= 1, 'a positive integer'),
    'SEED': (lambda v: v >= 0, 'a nonnegative integer'),
    'BOUNDARY_RATE': (lambda v: 0 <= v <= 1, 'a number in [0, 1]'),
    'P_SWEEP': (lambda v: len(v) > 0 and all(0 < p < 1 for p in v), 'a nonempty list of numbers in (0, 1)'),
}


class Settings:
    """
    Numerical defaults for the package. Values come from DEFAULTS,
    then CONCAVE_HANKEL_<NAME> environment variables, then configure().
    """
    setting_is_invalid = 'settings.%s must be %s (got %r).'

    def __init__(self):
        self._wrapped = {}
        self.configure()

    def __getattr__(self, name):
        try:
            return self.__dict__['_wrapped'][name]
        except KeyError:
            raise AttributeError(name) from None

    def configure(self, **overrides):
        unknown = sorted(set(overrides) - set(DEFAULTS))
        if unknown:
            raise ImproperlyConfigured('Unknown setting(s): %s.' % ', '.join(unknown))
        values = dict(DEFAULTS)
        for name in DEFAULTS:
            raw = os.environ.get(ENVIRONMENT_PREFIX + name)
            if raw is not None:
                values[name] = self.parse_environment(name, raw)
        values.update(overrides)
        for name, value in values.items():
            self.validate(name, value)
        self._wrapped = values

    def parse_environment(self, name, raw):
        default = DEFAULTS[name]
        try:
            if isinstance(default, tuple):
                return tuple(float(item) for item in raw.split(',') if item.strip())
            return type(default)(raw)
        except ValueError:
            raise ImproperlyConfigured(
                'Could not parse the %s%s environment variable (got %r).' % (ENVIRONMENT_PREFIX, name, raw)
            ) from None

    def validate(self, name, value):
        predicate, description = VALIDATORS[name]
        expected = type(DEFAULTS[name])
        # Integers are acceptable wherever a float is expected.
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, expected) or not predicate(value):
            raise ImproperlyConfigured(self.setting_is_invalid % (name, description, value))

    @contextmanager
    def override(self, **overrides):
        previous = self._wrapped
        self.configure(**{**previous, **overrides})
        try:
            yield self
        finally:
            self._wrapped = previous


settings = Settings()
