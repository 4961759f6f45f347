"""Kernel backend selection.

The Schur-form kernel exists twice: a Cython extension built at install
time and a numpy fallback.  Import prefers the compiled one; everything
above this package sees a single ``schur_form`` callable.
"""

from . import fallback

try:  # pragma: no cover - depends on whether the extension was built
    from . import _compiled
    _impl = _compiled
except ImportError:  # pragma: no cover
    _compiled = None
    _impl = fallback

BACKEND_NAME = _impl.NAME
schur_form = _impl.schur_form


def available_backends():
    """Mapping of backend name -> module, for tests and benchmarks."""
    backends = {"python": fallback}
    if _compiled is not None:
        backends["compiled"] = _compiled
    return backends
