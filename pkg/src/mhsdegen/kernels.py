"""Kernel selection: the compiled extension when built, else pure Python."""
try:
    from ._kernels import lex_brackets, li2_series

    BACKEND = "cython"
except ImportError:  # pragma: no cover - exercised when the extension is not built
    from ._pykernels import lex_brackets, li2_series

    BACKEND = "python"

__all__ = ["BACKEND", "lex_brackets", "li2_series"]
