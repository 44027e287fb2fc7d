"""Shared, session-scoped results of the expensive pipeline stages."""
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from torsionpairs.intersect import compress, reduce_Fp_mod_F3, resultant_profile

settings.register_profile(
    "suite", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@lru_cache(maxsize=None)
def pair(p):
    return reduce_Fp_mod_F3(p)


@lru_cache(maxsize=None)
def profile(p, eliminate):
    """Uncompressed for eliminate in (u, v), compressed for (s, w)."""
    obj = compress(pair(p)) if eliminate in ("s", "w") else pair(p)
    return resultant_profile(obj, eliminate, workers=1)


@pytest.fixture(scope="session")
def pair7():
    return pair(7)


@pytest.fixture(scope="session")
def u_profile7():
    return profile(7, "v")


@pytest.fixture(scope="session")
def v_profile7():
    return profile(7, "u")


@pytest.fixture(scope="session")
def certificate7():
    from torsionpairs.numcert import build_certificate

    return build_certificate(7, 512, pair=pair(7), u_part=_cubed_part(profile(7, "v")))


def _cubed_part(prof):
    return next(part.poly for part in prof.parts if part.multiplicity == 3)


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
