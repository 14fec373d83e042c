"""Numerical laboratory for mean curvature flow in coupled Ricci / harmonic
map heat flow backgrounds."""

from geoflow._core import *  # noqa: F401,F403
from geoflow._core import __doc__  # noqa: F401
