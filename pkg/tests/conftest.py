import random

import pytest

from dahacubic.daha import Params, random_params

# filled in by test_acceptance.py, printed at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def seeded_params(n: int, seed: int) -> list[Params]:
    rng = random.Random(seed)
    return [random_params(rng) for _ in range(n)]


@pytest.fixture
def generic_params():
    return Params(2, 3, 5, 7)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
