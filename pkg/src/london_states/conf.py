"""
Runtime settings.

Every value may be overridden from the environment with a ``LONDON_STATES_``
prefixed variable, eg::

    LONDON_STATES_BACKEND=london_states.backends.threaded
    LONDON_STATES_PROPAGATE_TOL=1e-13

The module level ``settings`` reads the environment on first attribute
access, not on import, so a malformed value is raised where it is used.
"""
import os

from london_states.exceptions import ImproperlyConfigured

ENVIRON_PREFIX = 'LONDON_STATES_'


def _optional_int(value):
    return None if value in ('', 'none', 'None') else int(value)


DEFAULTS = {
    'BACKEND': 'london_states.backends.standard',
    'WORKERS': None,
    'PROPAGATE_TOL': 1e-12,
    'PROPAGATE_MAX_TERMS': 200,
    'PRECISION': 17,
    'COUPLING': 1.0,
}

PARSERS = {
    'BACKEND': str,
    'WORKERS': _optional_int,
    'PROPAGATE_TOL': float,
    'PROPAGATE_MAX_TERMS': int,
    'PRECISION': int,
    'COUPLING': float,
}


class Settings():
    # values live on the instance only, so a deleted override is an AttributeError

    def __init__(self, environ=None):
        environ = os.environ if environ is None else environ
        for name, default in DEFAULTS.items():
            raw = environ.get(ENVIRON_PREFIX + name)
            if raw is None:
                setattr(self, name, default)
                continue
            try:
                setattr(self, name, PARSERS[name](raw))
            except ValueError as err:
                raise ImproperlyConfigured(
                    "%s%s=%r: %s" % (ENVIRON_PREFIX, name, raw, err)) from err

    def __repr__(self):
        return '<Settings %s>' % ', '.join(
            '%s=%r' % (name, getattr(self, name)) for name in DEFAULTS)


class LazySettings():
    """
    Proxy to a :class:`Settings` built on first use.
    """

    def __init__(self):
        object.__setattr__(self, '_wrapped', None)

    def _setup(self):
        if self._wrapped is None:
            object.__setattr__(self, '_wrapped', Settings())
        return self._wrapped

    def __getattr__(self, name):
        return getattr(self._setup(), name)

    def __setattr__(self, name, value):
        if name == '_wrapped':
            object.__setattr__(self, name, value)
        else:
            setattr(self._setup(), name, value)

    def __delattr__(self, name):
        delattr(self._setup(), name)

    def __repr__(self):
        if self._wrapped is None:
            return '<LazySettings [unevaluated]>'
        return repr(self._wrapped)


settings = LazySettings()
