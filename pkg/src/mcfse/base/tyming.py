# -*- encoding: utf-8 -*-
"""
mcfse.base.tyming Module

Cycle time base shared by the scheduler and its doers.
"""
from .. import mcfsing


class Tymist(mcfsing.Mixin):
    """
    Tymist keeps artificial cycle time, called tyme, advanced by one .tock
    per scheduler cycle. Concealment runs are not real time so tyme only
    orders and limits work, it never waits on a clock.

    Class Attributes:
        Tock (float): default .tock

    Properties:
        tyme (float): relative cycle time in seconds
        tock (float): tyme increment of .tick()

    Methods:
        tick() increments .tyme by one .tock or provided tock
        tymen() returns closure that reads .tyme
    """
    Tock = 1.0

    def __init__(self, tyme=0.0, tock=None, **kwa):
        """
        Parameters:
            tyme (float): initial cycle time in seconds
            tock (float): cycle time increment in seconds
        """
        super(Tymist, self).__init__(**kwa)  # Mixin for Mult-inheritance MRO
        self.tyme = float(tyme)
        self.tock = float(tock) if tock is not None else self.Tock

    @property
    def tyme(self):
        """
        .tyme is float cycle time in seconds
        """
        return self._tyme

    @tyme.setter
    def tyme(self, tyme):
        self._tyme = float(tyme)

    @property
    def tock(self):
        """
        .tock is float cycle time .tyme increment in seconds
        """
        return self._tock

    @tock.setter
    def tock(self, tock):
        self._tock = float(tock)

    def tick(self, tock=None):
        """
        Advance .tyme by tock seconds when provided otherwise by .tock
        and return new .tyme
        """
        self.tyme += float(tock if tock is not None else self.tock)
        return self.tyme

    def tymen(self):
        """
        Returns function wrapper closure tymth, when called tymth() returns .tyme.
        Read only injection of .tyme into doers on this tyme base.
        """
        def tymth():
            return self.tyme
        return tymth


class Tymee(mcfsing.Mixin):
    """
    Tymee reads cycle time from an injected Tymist closure.

    Properties:
        tyme (float): cycle time of associated Tymist via .tymth
        tymth (callable): closure returned by Tymist.tymen()

    Methods:
        wind(tymth) injects new tymth
    """
    def __init__(self, tymth=None, **kwa):
        super(Tymee, self).__init__(**kwa)  # Mixin for Mult-inheritance MRO
        self._tymth = tymth

    @property
    def tyme(self):
        return self._tymth()

    @property
    def tymth(self):
        return self._tymth

    @tymth.setter
    def tymth(self, tymth):
        self._tymth = tymth

    def wind(self, tymth):
        """
        Inject new tymist.tymth as new ._tymth. Changes tymist.tyme base.
        """
        self.tymth = tymth


class Tymer(Tymee):
    """
    Tymer measures a duration on the cycle time of its Tymist.

    Properties:
        duration (float): tyme from start to stop
        elapsed (float): tyme since start
        expired (bool): True once .tyme >= stop
    """
    def __init__(self, duration=0.0, **kwa):
        """
        Parameters:
            duration (float): tymer duration in seconds of cycle time
        """
        super(Tymer, self).__init__(**kwa)
        self._start = self.tyme if self.tymth else 0.0
        self._stop = self._start + float(duration)

    @property
    def duration(self):
        return self._stop - self._start

    @property
    def elapsed(self):
        return self.tyme - self._start

    @property
    def expired(self):
        return self.tyme >= self._stop
