"""Spin and optical dynamics of non-Kramers rare-earth ions.

Units: kHz, us, mT; quadrupole energies in MHz.
"""

import os as _os

_fixtures = _os.path.join(_os.path.dirname(__file__), "fixtures")
if _os.path.isdir(_fixtures):
    _os.environ["NKSPIN_FIXTURE_PATH"] = _os.pathsep.join(
        p for p in (_os.environ.get("NKSPIN_FIXTURE_PATH"), _fixtures) if p
    )

from ._core import *  # noqa: F401,F403
from ._core import __version__, Error, NumericError, ConfigError  # noqa: F401


def fixture_drive(direction="II", omega0=30.0, ks=1, kg=0, rf_axis="b", fixture="eu_yso"):
    """RF drive between ground doublets ks and kg, splittings evaluated at 1 mT."""
    sys = load_fixture(fixture)
    levels = solve_levels(sys.ground, sys.field(direction, 1.0), sys.n)
    return rf_drive(levels, ks, kg, sys.field(rf_axis, 1.0).unit(), omega0)
