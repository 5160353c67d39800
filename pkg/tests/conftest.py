from itertools import combinations

import pytest
from hypothesis import strategies as st

from ekrtools.setcore import UniformFamily, make_family


def fam(n, k, sets):
    return make_family(n, k, sets)


def brute_subsets(n, k):
    """All k-subsets of [1, n] as frozensets, from itertools."""
    return [frozenset(c) for c in combinations(range(1, n + 1), k)]


@st.composite
def families(draw, max_n=8, min_k=0, max_size=12):
    n = draw(st.integers(min_value=max(1, min_k), max_value=max_n))
    k = draw(st.integers(min_value=min_k, max_value=n))
    pool = brute_subsets(n, k)
    chosen = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(max_size, len(pool))))
    return make_family(n, k, [sorted(s) for s in chosen])


def as_frozensets(family: UniformFamily):
    return {frozenset(s.members) for s in family.sets}


# Acceptance results, printed in the terminal summary.
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0].rstrip("."))):
            terminalreporter.write_line(f"{name}: {ACCEPTANCE[name]}")


@pytest.fixture
def record_acceptance():
    def record(name, passed, detail=""):
        line = ("PASS" if passed else "FAIL") + (f"  {detail}" if detail else "")
        ACCEPTANCE[name] = line
        print(f"[acceptance] {name}: {line}")
    return record
