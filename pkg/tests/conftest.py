from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from knead.algebra import Matrix, Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def int_matrices(max_n: int = 4, lo: int = -5, hi: int = 5):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(Matrix)


def zero_one_matrices(max_n: int = 4):
    return int_matrices(max_n, 0, 1)


def int_polys(max_deg: int = 5, lo: int = -6, hi: int = 6, const_one: bool = False):
    tail = st.lists(st.integers(lo, hi), min_size=0, max_size=max_deg)
    if const_one:
        return tail.map(lambda cs: Polynomial([1, *cs]))
    return tail.map(Polynomial)


# acceptance results are collected here and printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, float, str]] = {}


@pytest.fixture
def acceptance_record():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.3f} s){'  ' + note if note else ''}")
