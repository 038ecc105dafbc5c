"""Select the compiled oracle scan kernel, falling back to pure numpy."""

try:
    from . import _scan_cy as _impl
    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from . import _scan_py as _impl
    BACKEND = "python"

scan_pair_tables = _impl.scan_pair_tables
