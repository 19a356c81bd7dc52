"""Desk-scale search bounds shared by the exhaustive-search operations.

Exhaustive claims are only honest within an explicit bound; operations that
would have to search beyond it raise SearchBoundExceeded ("search refused")
instead of silently returning a non-exhaustive answer.  The environment
variable SIERP_SEARCH_BOUND overrides the default embedding-search vertex
bound.
"""

from __future__ import annotations

import os

DEFAULT_EMBEDDING_BOUND = 12
DEFAULT_EMBEDDING_BOUND_3CONNECTED = 16


class SearchBoundExceeded(RuntimeError):
    """An exhaustive search was refused because the instance is too large."""


def embedding_bound(three_connected: bool = False) -> int:
    env = os.environ.get("SIERP_SEARCH_BOUND")
    if env is not None:
        return int(env)
    return DEFAULT_EMBEDDING_BOUND_3CONNECTED if three_connected else DEFAULT_EMBEDDING_BOUND
