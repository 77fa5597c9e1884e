import numpy as np
import pytest

from spatialvote.geometry import CoalitionMask

SQUARE_PLUS_CENTER = np.array([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)], dtype=float)
CENTER = 4

ACCEPTANCE_RESULTS = {}


@pytest.fixture
def square():
    return SQUARE_PLUS_CENTER.copy()


def mask(n, *indices):
    return CoalitionMask.from_indices(n, indices)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        status, text = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{status}] criterion {key}: {text}")


# Synthetic justice-centered vote file in the database layout.  Votes come
# from a one-dimensional cutpoint model so the ideal-point order is known.
COURT_1965 = {
    "WODouglas": -4.0,
    "EWarren": -3.0,
    "AFortas": -2.2,
    "WJBrennan": -1.5,
    "HLBlack": -0.6,
    "BRWhite": 0.4,
    "TCClark": 1.1,
    "PStewart": 2.0,
    "JHarlan2": 4.0,
}
GINZBURG_MINORITY = ("WODouglas", "HLBlack", "PStewart", "JHarlan2")
CUTPOINTS = (-3.5, -2.6, -1.8, -1.0, 0.0, 0.8, 1.5, 3.0, -0.2, 0.6, 2.5, -3.2)


def synthetic_votes_csv(court="1503", absent=None):
    """CSV text with one cutpoint case per entry of CUTPOINTS plus a Ginzburg-style case.

    ``absent`` = (case index, justice) drops one vote to exercise the completeness filter.
    """
    lines = ["caseId,term,naturalCourt,justice,justiceName,majority"]
    ids = {name: 80 + i for i, name in enumerate(COURT_1965)}
    for c, cut in enumerate(CUTPOINTS):
        left = [n for n, x in COURT_1965.items() if x < cut]
        right = [n for n, x in COURT_1965.items() if x > cut]
        majority = set(left if len(left) > len(right) else right)
        for name in COURT_1965:
            if absent == (c, name):
                continue
            code = 2 if name in majority else 1
            lines.append(f"1965-{c:03d},1965,{court},{ids[name]},{name},{code}")
    for name in COURT_1965:
        code = 1 if name in GINZBURG_MINORITY else 2
        lines.append(f"1965-GINZ,1965,{court},{ids[name]},{name},{code}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def votes_csv(tmp_path):
    path = tmp_path / "votes.csv"
    path.write_text(synthetic_votes_csv())
    return path
