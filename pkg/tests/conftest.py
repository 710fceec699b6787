import math

import pytest

from fsdraw.fixtures import gen_fan, gen_grid, gen_polygon, gen_rhombus, gen_star

SQUARE_DOC = """{"vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 1, "y": 0},
                {"id": 2, "x": 1, "y": 1}, {"id": 3, "x": 0, "y": 1}],
   "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}"""

STAR_DOC = """{"vertices": [{"id": 0, "x": 0, "y": 0}, {"id": 1, "x": 1, "y": 0},
              {"id": 2, "x": -0.5, "y": 0.8660254037844386},
              {"id": 3, "x": -0.5, "y": -0.8660254037844386}],
 "edges": [[0, 1], [0, 2], [0, 3]]}"""


def small_fixtures():
    """Named drawings with at most 12 zones, including skewed variants."""
    out = {}
    for k in range(2, 9):
        out[f"polygon{k}"] = gen_polygon(k)
    for k in (2, 3, 5):
        out[f"polygon{k}-skew"] = gen_polygon(k, skew=0.3)
    for m, n in [(1, 1), (2, 1), (2, 2), (3, 3), (4, 2), (5, 5)]:
        out[f"grid{m}x{n}"] = gen_grid(m, n)
        out[f"grid{m}x{n}-skew"] = gen_grid(m, n, skew=math.pi / 6)
    for k in (2, 3, 4, 6):
        out[f"fan{k}"] = gen_fan(k)
        out[f"fan{k}-skew"] = gen_fan(k, skew=-0.4)
    for k in (2, 3, 4, 5):
        out[f"star{k}"] = gen_star(k)
    out["star3-skew"] = gen_star(3, skew=0.5)
    for delta in (math.pi / 12, math.pi / 6, math.pi / 4, math.pi / 3):
        out[f"rhombus{delta:.3f}"] = gen_rhombus(delta)
    return out


SMALL = small_fixtures()


@pytest.fixture(params=sorted(SMALL), ids=sorted(SMALL))
def small_drawing(request):
    return SMALL[request.param]


# One line per acceptance criterion, appended by test_acceptance and echoed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
