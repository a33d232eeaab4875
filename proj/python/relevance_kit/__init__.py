"""Exact decision-relevance certification."""

from ._relevance_kit import *  # noqa: F401,F403
from ._relevance_kit import __version__  # noqa: F401
