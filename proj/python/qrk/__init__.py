"""Reproducing kernels of Fourier and q-Fourier systems (C++ core)."""

from ._qrk import *  # noqa: F401,F403
from ._qrk import Error, DomainError, UsageError, ConvergenceError, BracketError, NonFiniteError  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
