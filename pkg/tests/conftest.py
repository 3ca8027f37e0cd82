from __future__ import annotations

import pytest

from zipcone.groupcore import GroupFamily, build_context

# every group datum appearing in the shipped cases
BUILT_IN = {
    "sp4": ("Sp", (1, 1)),
    "sp6": ("Sp", (1, 1, 1)),
    "gl3-21": ("GL", (1, 1, 0)),
    "gl4-31": ("GL", (1, 1, 1, 0)),
    "gl4-22": ("GL", (1, 1, 0, 0)),
    "u3-21": ("U", (1, 1, 0)),
    "u4-31": ("U", (1, 1, 1, 0)),
    "u4-22": ("U", (1, 1, 0, 0)),
    "b2-spin": ("SO", (1, 0)),
    "b3-spin": ("SO", (1, 0, 0)),
    "b4-spin": ("SO", (1, 0, 0, 0)),
}

# cases shipped with separating-system tables
TABULATED = ("sp6", "gl4-31", "gl4-22", "u3-21", "u4-31")


def context(key: str, q: int = 5):
    tag, mu = BUILT_IN[key]
    return build_context(GroupFamily(tag, len(mu)), mu, q)


@pytest.fixture(params=sorted(BUILT_IN))
def built_in(request):
    return context(request.param)
