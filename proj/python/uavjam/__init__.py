"""Secrecy analysis for UAV-jammer-assisted ground links."""

from ._uavjam import *  # noqa: F401,F403
from ._uavjam import __version__  # noqa: F401
