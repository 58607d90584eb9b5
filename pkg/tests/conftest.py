from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "kpkit",
    settings(
        max_examples=60,
        derandomize=True,
        suppress_health_check=[HealthCheck.too_slow],
        deadline=None,
    ),
)
settings.load_profile("kpkit")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Pay the JIT compile cost before any timed acceptance check runs.
    from kpkit import _accel

    _accel.warmup()
