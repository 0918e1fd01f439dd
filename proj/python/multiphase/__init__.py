"""Precision bounds for simultaneous multi-phase estimation under photon loss."""

from ._core import *  # noqa: F401,F403
from ._core import SingularBoundError, ConfigError  # noqa: F401

__version__ = "0.1.0"
