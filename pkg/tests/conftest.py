from __future__ import annotations

import pytest

from quartics.fixedpoints import assemble_h4, enumerate_h3


@pytest.fixture(scope="session")
def h3_points():
    return enumerate_h3()


@pytest.fixture(scope="session")
def h4_points(h3_points):
    return assemble_h4(h3_points)
