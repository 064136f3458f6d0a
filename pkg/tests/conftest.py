# Ensure the project `src` package is importable when running pytest directly
import os
import sys

import pytest

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from src.mildp.arith.classgroup import build_class_group  # noqa: E402
from src.mildp.arith.quadfield import make_field, place_from_root  # noqa: E402

EXAMPLE_D = -23
EXAMPLE_P = 3
EXAMPLE_PLACES = "13:4,211:71,67,31:15"


@pytest.fixture(scope="session")
def field():
    return make_field(EXAMPLE_D)


@pytest.fixture(scope="session")
def places(field):
    """(13, sqrt(-23) - 4), (211, sqrt(-23) - 71), (67), (31, sqrt(-23) - 15)."""
    return (
        place_from_root(field, 13, 4),
        place_from_root(field, 211, 71),
        place_from_root(field, 67, None),
        place_from_root(field, 31, 15),
    )


@pytest.fixture(scope="session")
def cl(field, places):
    return build_class_group(field, EXAMPLE_P, places)
