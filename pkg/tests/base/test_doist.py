# -*- encoding: utf-8 -*-
"""
tests.base.test_doist module

"""
import pytest

from mcfse.base import doing


class TickDoer(doing.Doer):
    """
    Doer that logs scheduler tyme of each recur and completes after count
    """
    def __init__(self, count=2, log=None, tag="", **kwa):
        super(TickDoer, self).__init__(**kwa)
        self.count = count
        self.log = log if log is not None else []
        self.tag = tag

    def recur(self, tyme):
        self.log.append((self.tag, tyme))
        self.count -= 1
        return self.count <= 0

    def exit(self):
        self.log.append((self.tag, "exit"))


def test_doist():
    """
    Test Doist interleaves doers and completes
    """
    doist = doing.Doist()
    assert doist.tyme == 0.0
    assert doist.tock == 1.0
    assert doist.limit is None
    assert doist.done is None
    assert doist.doers == []

    log = []
    a = TickDoer(count=2, log=log, tag="a")
    b = TickDoer(count=3, log=log, tag="b")
    doist = doing.Doist(doers=[a, b])
    doist.do()
    assert doist.done == True
    assert a.done == True
    assert b.done == True
    # enter yields at tyme 0, recurs interleave one per cycle
    assert log == [("a", 0.0), ("b", 0.0), ("a", 1.0), ("a", "exit"),
                   ("b", 1.0), ("b", 2.0), ("b", "exit")]
    assert doist.tyme == 3.0
    """Done Test"""


def test_doist_limit():
    """
    Test Doist limit force closes remaining doers in reverse order
    """
    log = []
    a = TickDoer(count=10, log=log, tag="a")
    b = TickDoer(count=10, log=log, tag="b")
    doist = doing.Doist(limit=2.0, doers=[a, b])
    doist.do()
    assert doist.done == False
    assert a.done == False
    assert b.done == False
    assert log[-2:] == [("b", "exit"), ("a", "exit")]
    assert doist.tyme == 2.0
    assert not doist.deeds

    # rerun with new doers and tyme
    c = TickDoer(count=1, log=log, tag="c")
    doist.do(doers=[c], limit=5.0, tyme=0.0)
    assert doist.done == True
    assert c.done == True
    """Done Test"""


if __name__ == "__main__":
    test_doist()
    test_doist_limit()
