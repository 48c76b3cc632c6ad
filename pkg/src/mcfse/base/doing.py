# -*- encoding: utf-8 -*-
"""
mcfse.base.doing Module

Cooperative scheduler used by the experiment harness to interleave
independent (algorithm, sequence) concealment cells. Each cell is a Doer whose
recur context conceals one lost block per scheduler cycle, so progress of all
cells advances together and a run limit stops them all cleanly.
"""
from inspect import isgeneratorfunction
from collections import deque, namedtuple

from . import tyming


Deed = namedtuple("Deed", "dog retyme doer")


class Doist(tyming.Tymist):
    """
    Doist is the root scheduler of Doers.
    Provides relative cycle time in seconds with .tyme property to doers it runs.
    Runs as fast as possible, .tyme advances one .tock per .recur.

    Attributes:
        limit (float | None): maximum run tyme, then closes all doers
        done (bool | None): True means all deeds completed,
            False means forced close due to limit
        doers (list): Doer instances
        deeds (deque): Deed triples (dog, retyme, doer)

    Methods:
        enter() prepare deeds from doers
        recur() run each deed once that is due
        exit() force close remaining deeds in reverse order
        do() enter then recur until all complete or limit then exit
    """
    def __init__(self, limit=None, doers=None, **kwa):
        """
        Parameters:
            tyme (float): initial cycle time in seconds (inherited)
            tock (float): tock time in seconds (inherited)
            limit (float | None): max run tyme. None means no limit.
            doers (iterable): Doer instances
        """
        super(Doist, self).__init__(**kwa)
        self.limit = abs(float(limit)) if limit is not None else None
        self.done = None
        self.doers = list(doers) if doers is not None else []
        self.deeds = deque()


    def do(self, doers=None, limit=None, tyme=None):
        """
        Readies deeds from .doers or doers and runs .recur until every deed
        completes or .limit is reached. Always closes remaining deeds on exit.

        Parameters:
            doers (iterable): replaces .doers when provided
            limit (float): replaces .limit when provided
            tyme (float): resets .tyme when provided
        """
        self.done = False
        if doers is not None:
            self.doers = list(doers)
            self.deeds = deque()
        if limit is not None:
            self.limit = abs(float(limit))
        if tyme is not None:
            self.tyme = tyme

        try:
            self.enter()
            tymer = tyming.Tymer(tymth=self.tymen(),
                                 duration=self.limit if self.limit else 0.0)
            while True:
                try:
                    self.recur()
                    if not self.deeds:
                        self.done = True
                        break
                    if self.limit and tymer.expired:
                        break
                except KeyboardInterrupt:  # use CNTL-C to shutdown from shell
                    break

        finally:
            self.exit()


    def enter(self, doers=None):
        """
        Create a generator dog from each doer, run its enter context and
        return deeds deque. Uses and fills .deeds when doers not provided.
        """
        if doers is None:
            doers = self.doers
            deeds = self.deeds
        else:
            deeds = deque()

        for doer in doers:
            doer.done = None
            dog = doer(tymth=self.tymen(), tock=doer.tock, **doer.opts)
            try:
                next(dog)  # enter context
            except StopIteration as ex:
                doer.done = ex.value if ex.value else False
                continue
            deeds.append(Deed(dog, self.tyme, doer))
        return deeds


    def recur(self, deeds=None):
        """
        Run once through deeds, sending .tyme to each due dog and reappending
        those still running. Advances .tyme by one .tock at the end.
        """
        if deeds is None:
            deeds = self.deeds

        for _ in range(len(deeds)):
            dog, retyme, doer = deeds.popleft()
            if retyme <= self.tyme:
                try:
                    tock = dog.send(self.tyme)
                except StopIteration as ex:
                    doer.done = ex.value if ex.value else False
                    continue
                retyme = self.tyme + (tock if tock else self.tock)
            deeds.append(Deed(dog, retyme, doer))

        self.tick()


    def exit(self, deeds=None):
        """
        Force close each remaining dog in reverse order so exits nest
        opposite to enters.
        """
        if deeds is None:
            deeds = self.deeds

        while deeds:
            dog, retyme, doer = deeds.pop()
            dog.close()  # GeneratorExit runs close then exit context
            doer.done = False


class Doer(tyming.Tymee):
    """
    Doer base class. Calling the instance returns its .do generator.
    .do runs the lifecycle contexts:
        enter, recur, clean, exit
        enter, recur, close, exit
        enter, recur, abort, exit

    Attributes:
        done (bool | None): completion state
        opts (dict): options injected into .do by the scheduler

    Properties:
        tock (float): desired tyme between runs, zero means every cycle
    """

    def __init__(self, *, tymth=None, tock=0.0, **opts):
        super(Doer, self).__init__(tymth=tymth)
        self.done = None
        self.tock = tock
        self.opts = opts


    def __call__(self, **kwa):
        """
        Returns generator without advancing to first yield
        """
        return self.do(**kwa)


    @property
    def tock(self):
        return self._tock


    @tock.setter
    def tock(self, tock):
        self._tock = abs(float(tock))


    def do(self, tymth, *, tock=0.0, **opts):
        """
        Generator method to run this doer. Subclasses override the lifecycle
        methods not this one.

        Parameters:
            tymth (callable): injected Tymist.tymen() closure
            tock (float): injected initial tock value
        """
        try:
            self.wind(tymth)
            self.tock = tock
            self.done = False
            self.enter()

            if isgeneratorfunction(self.recur):
                self.done = yield from self.recur()
            else:
                while not self.done:
                    tyme = (yield (self.tock))
                    self.done = self.recur(tyme=tyme)

        except GeneratorExit:  # forced close
            self.close()

        except Exception as ex:  # abort on uncaught exception
            self.abort(ex=ex)
            raise

        else:
            self.clean()

        finally:
            self.exit()

        return self.done


    def enter(self):
        """
        Do 'enter' context actions. Override in subclass.
        """


    def recur(self, tyme):
        """
        Do 'recur' context actions. Override in subclass.
        Returns completion state, True means done.
        """
        return True


    def clean(self):
        """
        Do 'clean' context actions after normal completion. Override in subclass.
        """


    def exit(self):
        """
        Do 'exit' context actions. Always runs. Override in subclass.
        """


    def close(self):
        """
        Do 'close' context actions on forced close. Override in subclass.
        """


    def abort(self, ex):
        """
        Do 'abort' context actions on uncaught exception. Override in subclass.
        """
