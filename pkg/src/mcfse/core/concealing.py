# -*- encoding: utf-8 -*-
"""
mcfse.core.concealing module

Concealment of every lost block of a sequence with one algorithm. Blocks are
concealed one at a time in ascending frame and raster order, each concealed
block becoming support for the blocks after it.
"""
from collections import deque, namedtuple
import dataclasses
from dataclasses import dataclass, astuple, field

from .. import help
from ..mcfsing import ConfigError, McfseError, MotionError, ValidationError
from ..base import doing
from ..help.timing import MonoTimer
from .motioning import estimateMotionSet, checkReliability
from .voluming import assembleVolume
from .extrapolating import FseConfig, fseGenerateModel, cutPatch
from .baselining import concealTr, concealEbma, concealDmve

logger = help.ogler.getLogger()


@dataclass(frozen=True)
class AlgorithmCodex:
    """
    AlgorithmCodex is codex of concealment algorithm names.
    """
    tr:    str = 'TR'  # temporal replacement
    ebma:  str = 'EBMA'  # extended boundary matching
    dmve:  str = 'DMVE'  # decoder motion vector estimation
    fse3d: str = 'FSE3D'  # extrapolation without alignment
    mcfse: str = 'MCFSE'  # motion compensated extrapolation

    def __iter__(self):
        return iter(astuple(self))


AlgDex = AlgorithmCodex()  # Make instance


@dataclass(frozen=True)
class ConcealConfig:
    """
    ConcealConfig holds concealment parameters of one run.

    Attributes:
        algorithm (str): AlgDex name
        nP (int): previous frames in the volume and motion search
        nF (int): following frames in the volume and motion search
        border (int): volume margin around the block in pixels
        bandWidth (int): decision area ring width, also used by DMVE
        dMax (int): fullpel search range
        tAbs (float): absolute reliability threshold, 0 forces 3D-FSE
        tRel (float): relative reliability threshold
        ebmaWidth (int): EBMA boundary width
        fse (FseConfig): model generation parameters
    """
    algorithm: str = AlgDex.mcfse
    nP: int = 2
    nF: int = 2
    border: int = 16
    bandWidth: int = 4
    dMax: int = 16
    tAbs: float = 100.0
    tRel: float = 3.0
    ebmaWidth: int = 1
    fse: FseConfig = field(default_factory=FseConfig)

    def __post_init__(self):
        if self.algorithm not in AlgDex:
            raise ConfigError(f"Unknown algorithm {self.algorithm!r}, expected one"
                              f" of {', '.join(AlgDex)}.")
        for name in ("nP", "nF", "border", "dMax"):
            if getattr(self, name) < 0:
                raise ConfigError(f"Invalid {name}={getattr(self, name)}.")
        if self.bandWidth < 1 or self.ebmaWidth < 1:
            raise ConfigError(f"Invalid band widths {self.bandWidth}, {self.ebmaWidth}.")
        if self.tAbs < 0 or self.tRel < 0:
            raise ConfigError(f"Invalid thresholds tAbs={self.tAbs} tRel={self.tRel}.")

    def replace(self, **kwa):
        """
        Returns copy with fields in kwa replaced
        """
        return dataclasses.replace(self, **kwa)


Extrapolation = namedtuple("Extrapolation", "patch model volume vectors reliable")


def extrapolateBlock(seq, mask, block, config=None, motion=True, checkpoints=None):
    """
    Returns Extrapolation for one block.

    With motion the vectors of every offset are estimated and checked. Reliable
    vectors align the volume, otherwise and without motion the volume is the
    plain spatio-temporal cut out.
    """
    config = config if config is not None else ConcealConfig()
    vectors, reliable = None, False
    if motion:
        try:
            vectors = estimateMotionSet(seq, mask, block, nP=config.nP, nF=config.nF,
                                        dMax=config.dMax, bandWidth=config.bandWidth)
        except MotionError as ex:
            logger.debug("Motion estimation failed for %s: %s", block, ex)
            vectors = None
        if vectors:
            reliable = checkReliability(vectors, vectors.areaSize,
                                        config.tAbs, config.tRel)
        logger.debug("Vectors for %s reliable=%s.", block, reliable)

    volume = assembleVolume(seq, mask, block, vectors if reliable else None,
                            nP=config.nP, nF=config.nF, border=config.border)
    model = fseGenerateModel(volume, config.fse, checkpoints=checkpoints)
    return Extrapolation(cutPatch(model, volume), model, volume, vectors, reliable)


def concealBlockFse(seq, mask, block, config=None, checkpoints=None):
    """
    Returns patch of block concealed by extrapolation without alignment
    """
    return extrapolateBlock(seq, mask, block, config, motion=False,
                            checkpoints=checkpoints).patch


def concealBlockMcfse(seq, mask, block, config=None, checkpoints=None):
    """
    Returns patch of block concealed by motion compensated extrapolation
    """
    return extrapolateBlock(seq, mask, block, config, motion=True,
                            checkpoints=checkpoints).patch


Outcome = namedtuple("Outcome", "block ok fallback reliable error patches")


class Concealer:
    """
    Concealer conceals the lost blocks of a sequence one by one on a working
    copy of the luma and of the availability map.

    Attributes:
        config (ConcealConfig): parameters
        luma (np.ndarray): working luma [t, y, x], lost samples zero filled
        available (np.ndarray): working availability, True for concealed blocks
        queue (deque): blocks still to conceal in concealment order
        outcomes (list[Outcome]): one per attempted block
        checkpoints (tuple | None): iteration counts whose patches are kept

    Properties:
        done (bool): True when the queue is empty
        failures (int): number of failed blocks
    """

    def __init__(self, seq, mask, config=None, checkpoints=None):
        """
        Parameters:
            seq (Sequence): corrupted or original sequence
            mask (LossMask): loss mask of seq
            config (ConcealConfig): parameters
            checkpoints (iterable | None): iteration counts for traces
        """
        if seq.luma.shape != mask.available.shape:
            raise ValidationError(f"Mask {mask.available.shape} does not match"
                                  f" sequence {seq.luma.shape}.")
        self.seq = seq
        self.mask = mask
        self.config = config if config is not None else ConcealConfig()
        self.luma = seq.luma.copy()
        self.luma[~mask.available] = 0
        self.available = mask.available.copy()
        self.queue = deque(mask.blocks)
        self.outcomes = []
        self.checkpoints = tuple(checkpoints) if checkpoints is not None else None


    @property
    def done(self):
        return not self.queue


    @property
    def failures(self):
        return sum(1 for outcome in self.outcomes if not outcome.ok)


    def _conceal(self, block):
        """
        Returns (patch, fallback, reliable, patches) for block
        """
        config = self.config
        algorithm = config.algorithm
        if algorithm == AlgDex.tr:
            return concealTr(self.luma, self.available, block), None, None, {}
        if algorithm == AlgDex.ebma:
            try:
                patch = concealEbma(self.luma, self.available, block,
                                    dMax=config.dMax, boundaryWidth=config.ebmaWidth)
                return patch, None, None, {}
            except MotionError as ex:
                logger.warning("EBMA falls back to TR for %s: %s", block, ex)
                return concealTr(self.luma, self.available, block), AlgDex.tr, None, {}
        if algorithm == AlgDex.dmve:
            patch = concealDmve(self.luma, self.available, block,
                                dMax=config.dMax, bandWidth=config.bandWidth)
            return patch, None, None, {}

        result = extrapolateBlock(self.luma, self.available, block, config,
                                  motion=algorithm == AlgDex.mcfse,
                                  checkpoints=self.checkpoints)
        reliable = result.reliable if algorithm == AlgDex.mcfse else None
        return result.patch, None, reliable, result.model.patches


    def step(self):
        """
        Conceals the next queued block. Returns its Outcome or None when done.
        A failed block stays zero filled and unavailable, the run continues.
        """
        if not self.queue:
            return None
        block = self.queue.popleft()
        try:
            patch, fallback, reliable, patches = self._conceal(block)
        except McfseError as ex:
            logger.error("Failed concealing %s with %s: %s",
                         block, self.config.algorithm, ex)
            outcome = Outcome(block, False, None, None, str(ex), {})
        else:
            rows = slice(block.y0, block.y0 + block.size)
            cols = slice(block.x0, block.x0 + block.size)
            self.luma[block.frame, rows, cols] = patch
            self.available[block.frame, rows, cols] = True
            outcome = Outcome(block, True, fallback, reliable, None, patches)
        self.outcomes.append(outcome)
        return outcome


    def run(self):
        """
        Conceals every queued block and returns the concealed Sequence
        """
        while self.step():
            pass
        return self.result()


    def result(self):
        """
        Returns Sequence built from the working luma
        """
        return self.seq.replace(self.luma)


class ConcealerDoer(doing.Doer):
    """
    ConcealerDoer runs a Concealer under a Doist, one block per recur so
    several concealment cells interleave under one scheduler.

    Attributes:
        concealer (Concealer): the concealment cell
        name (str): cell label used in logs and reports
        timer (MonoTimer): accumulates wall clock time spent concealing
    """

    def __init__(self, concealer, name="", **kwa):
        super(ConcealerDoer, self).__init__(**kwa)
        self.concealer = concealer
        self.name = name
        self.timer = MonoTimer()


    @property
    def seconds(self):
        return self.timer.total


    def enter(self):
        logger.info("Concealing %s with %d blocks.", self.name,
                    len(self.concealer.queue))


    def recur(self, tyme):
        self.timer.start()
        self.concealer.step()
        self.timer.lap()
        return self.concealer.done


    def clean(self):
        logger.info("Concealed %s, %d failures in %.3f s.", self.name,
                    self.concealer.failures, self.seconds)


    def close(self):
        logger.warning("Stopped %s with %d blocks left.", self.name,
                       len(self.concealer.queue))


def concealSequence(seq, mask, config=None):
    """
    Returns Sequence with every lost block of mask concealed with config
    """
    return Concealer(seq, mask, config).run()
