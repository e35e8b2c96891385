"""Size caps guarding against accidental blowup."""

import os

from .errors import SizeLimitExceeded

CELL_CAP_ENV = "SIMPLICIAL_GAMES_MAX_CELLS"

DEFAULT_GRAPH_CAP = 10**6
DEFAULT_CELL_CAP = 10**7
MAX_VERTICES = 16


def cell_cap():
    """Cap on dense tables (nim boxes, product games); overridable from the environment."""
    raw = os.environ.get(CELL_CAP_ENV)
    if raw is None:
        return DEFAULT_CELL_CAP
    try:
        return int(raw)
    except ValueError:
        raise SizeLimitExceeded(f"{CELL_CAP_ENV}={raw!r} is not an integer") from None


def check_size(size, cap, what):
    if size > cap:
        raise SizeLimitExceeded(f"{what} has {size} cells, cap is {cap}")
