import functools

import pytest
from hypothesis import settings

from wcw.gf import Field
from wcw.verma import build_verma, lambda_set
from wcw.witt import PChar, WittShape

settings.register_profile("wcw", max_examples=60, deadline=None)
settings.load_profile("wcw")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@functools.lru_cache(maxsize=None)
def field(p, m=1):
    return Field(p, m)


def chi_of(p, ell, values, m=1):
    return PChar(WittShape(field(p, m), ell), values)


@functools.lru_cache(maxsize=None)
def _vermas(p, ell, items, m):
    chi = chi_of(p, ell, dict(items), m)
    return tuple(build_verma(chi, lam) for lam in lambda_set(chi))


def vermas(p, ell, values, m=1):
    """All Z_chi(lambda), lambda in Lambda(chi); cached across tests."""
    return _vermas(p, ell, tuple(sorted(values.items())), m)


@pytest.fixture(scope="session")
def F5():
    return field(5)
