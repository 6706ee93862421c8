"""Backend selection for the hot kernels.

The compiled ``_core`` extension is used when it is importable; otherwise the
numpy implementation in ``_core_py`` takes over. Setting
``EPIDEMETRIC_PURE_PYTHON=1`` forces the fallback. Both backends return
identical results.
"""
import os

from . import _core_py

BACKEND = "python"
_impl = _core_py

if not os.environ.get("EPIDEMETRIC_PURE_PYTHON"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

all_pairs_bfs = _impl.all_pairs_bfs
ball_volume_profile = _impl.ball_volume_profile
walk = _impl.walk
stream_keys = _impl.stream_keys
uniforms = _impl.uniforms


def get_backend(name):
    """Return the kernel module for ``"cython"`` or ``"python"``."""
    if name == "python":
        return _core_py
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")


def thread_count():
    """Worker cap from ``EPIDEMETRIC_THREADS`` (default: CPU count)."""
    raw = os.environ.get("EPIDEMETRIC_THREADS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"EPIDEMETRIC_THREADS must be an integer, got {raw!r}") from None
        return max(1, value)
    return os.cpu_count() or 1
