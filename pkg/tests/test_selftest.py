"""The CLI selftest registry, run check by check under pytest."""

import pytest

from uval.checks import CHECKS


@pytest.mark.parametrize("name,fn", CHECKS, ids=[name for name, _ in CHECKS])
def test_selftest_check(name, fn):
    fn("quick")
