import os

import pytest
from hypothesis import HealthCheck, settings

from scrollacm.surface import Scroll

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "100")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.load_profile("default")

QUARTICS = [Scroll.from_ab(2, 2), Scroll.from_ab(1, 3)]
WILD = [Scroll.from_ab(2, 3), Scroll.from_ab(3, 3), Scroll.from_ab(1, 4), Scroll.from_ab(2, 5)]


@pytest.fixture
def s22():
    return Scroll.from_ab(2, 2)


@pytest.fixture
def s13():
    return Scroll.from_ab(1, 3)


@pytest.fixture
def s23():
    return Scroll.from_ab(2, 3)


@pytest.fixture
def s33():
    return Scroll.from_ab(3, 3)


def scrolls_by_degree(lo: int, hi: int) -> list[Scroll]:
    """Every S(theta, theta + epsilon) with lo <= d_X <= hi."""
    out = []
    for d in range(lo, hi + 1):
        for theta in range(1, d // 2 + 1):
            out.append(Scroll(theta, d - 2 * theta))
    return out


# one summary line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
