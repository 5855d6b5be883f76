from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from oracles import small_contexts

settings.register_profile(
    "repo", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


@pytest.fixture(params=list(small_contexts()), ids=lambda c: c.label())
def small_ctx(request):
    return request.param
