"""Operator transforms, gap metrics and spectral flow."""

from ._opflow import *  # noqa: F401,F403
from ._opflow import __doc__  # noqa: F401

__version__ = "0.1.0"
