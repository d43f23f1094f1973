import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pnormsimplex import Basis, StandardFormLP


@pytest.fixture
def square_lp():
    """min -x1 - x2 over the unit square with slacks x3, x4.

    Optimum (1, 1) at basis {1, 2} with objective -2; every basis is
    feasible except the singular pairs {1, 3} and {2, 4}.
    """
    return StandardFormLP(
        m=2, n=4,
        A=[[1, 0, 1, 0], [0, 1, 0, 1]],
        b=[1, 1],
        c=[-1, -1, 0, 0],
        name="square",
    )


@pytest.fixture
def slack_basis():
    return Basis((3, 4))
