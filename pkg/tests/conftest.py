import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simpart.score import ScoreFunction

# Hand-picked 3-point set function used across the suite.  Points are
# 0, 1, 2; masks index values as usual.  Its Moebius inversion has a
# non-zero top coefficient, so it exercises the generic (non-quadratic)
# code paths.
DEMO3_VALUES = [0.0, 0.2, 0.2, 0.8, 0.2, 0.3, 0.6, 0.7]
DEMO3_MOBIUS = [0.0, 0.2, 0.2, 0.4, 0.2, -0.1, 0.2, -0.4]


@pytest.fixture
def demo3():
    return ScoreFunction.from_values(DEMO3_VALUES)
