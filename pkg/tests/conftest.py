import functools

import pytest
from hypothesis import settings

from semicomm.enumeration import EnumerationTask, enumerate_semirings
from semicomm.fixtures import BUILTINS

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def census(order):
    return tuple(enumerate_semirings(EnumerationTask(order)))


def small_census():
    return [s for n in (1, 2, 3) for s in census(n)]


@pytest.fixture(params=sorted(BUILTINS))
def builtin(request):
    return BUILTINS[request.param]()
