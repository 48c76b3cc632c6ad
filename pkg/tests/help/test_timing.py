# -*- encoding: utf-8 -*-
"""
tests.help.test_timing module

"""
import time
import pytest

from mcfse.help.timing import MonoTimer


def test_monotimer():
    """
    Test MonoTimer class
    """
    timer = MonoTimer()
    assert timer.laps == []
    assert timer.total == 0.0
    time.sleep(0.0001)
    assert timer.elapsed > 0.0

    start = timer.start()
    assert start > 0.0
    time.sleep(0.01)
    lap = timer.lap()
    assert lap >= 0.01
    assert timer.laps == [lap]
    assert timer.elapsed < lap

    time.sleep(0.001)
    second = timer.lap()
    assert len(timer.laps) == 2
    assert timer.total == pytest.approx(lap + second)

    """End Test """


if __name__ == "__main__":
    test_monotimer()
