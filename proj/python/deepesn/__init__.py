"""Deep echo state network reservoirs, richness measures and readouts."""

from ._deepesn import *  # noqa: F401,F403
