import os

import pytest
from hypothesis import HealthCheck, settings

from gradering.corpus.families import enumerate_instances

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SWEEP_PARAMS = {"primes": [2, 3], "max_n": 2, "max_order": 4}


@pytest.fixture(scope="session")
def sweep_instances():
    out = []
    for fam in ("matrix-pattern", "group-algebra"):
        out.extend(enumerate_instances(fam, SWEEP_PARAMS))
    return out
