# -*- encoding: utf-8 -*-
"""
mcfse.help.timing module

Wall clock timing of concealment cells

"""
import time

from .. import mcfsing


class MonoTimer(mcfsing.Mixin):
    """
    Monotonic wall clock stopwatch built on time.perf_counter so elapsed time
    never runs backward when the system clock is retrograded.

    Attributes:
        laps (list[float]): recorded lap durations in seconds

    Properties:
        elapsed (float): seconds since last .start()
        total (float): sum of recorded laps

    Methods:
        .start() start or restart at current time, returns start time
        .lap() record and return elapsed time, then restart
    """

    def __init__(self, **kwa):
        super(MonoTimer, self).__init__(**kwa)  # Mixin for Mult-inheritance MRO
        self.laps = []
        self._start = time.perf_counter()


    @property
    def elapsed(self):
        """
        elapsed time property getter,
        Returns elapsed time in seconds (fractional) since ._start.
        """
        return time.perf_counter() - self._start


    @property
    def total(self):
        """
        Returns sum of recorded lap durations in seconds
        """
        return sum(self.laps)


    def start(self):
        """
        Starts timer at current time and returns start time
        """
        self._start = time.perf_counter()
        return self._start


    def lap(self):
        """
        Records elapsed time as a lap, restarts and returns lap duration
        """
        now = time.perf_counter()
        duration = now - self._start
        self.laps.append(duration)
        self._start = now
        return duration
