# -*- encoding: utf-8 -*-
"""
mcfse.core.baselining module

Temporal baseline concealment: temporal replacement (TR), extended boundary
matching (EBMA) and decoder motion vector estimation (DMVE). All three copy a
block out of the previous frame and differ only in how they pick it. The
copied block must lie on available or already concealed pixels.
"""
from .. import help
from ..mcfsing import BaselineError, MotionError
from .videoing import planesOf
from .lossing import availability
from .motioning import makeDecisionArea, estimateMotion

logger = help.ogler.getLogger()


def _previous(luma, block):
    if block.frame < 1:
        raise BaselineError(f"No previous frame for {block}.")
    if block.frame >= luma.shape[0]:
        raise BaselineError(f"Block {block} frame outside sequence.")
    return block.frame - 1


def _copy(luma, frame, block, vector=(0, 0)):
    dx, dy = vector
    y, x = block.y0 + dy, block.x0 + dx
    return luma[frame, y:y + block.size, x:x + block.size].copy()


def concealTr(seq, mask, block):
    """
    Returns patch copied from the same position in the previous frame.
    Raises BaselineError when that block is not available.
    """
    luma = planesOf(seq)
    prior = _previous(luma, block)
    rows = slice(block.y0, block.y0 + block.size)
    cols = slice(block.x0, block.x0 + block.size)
    if not availability(mask)[prior, rows, cols].all():
        raise BaselineError(f"Unavailable source block in frame {prior} for {block}.")
    return _copy(luma, prior, block)


def concealEbma(seq, mask, block, dMax=16, boundaryWidth=1):
    """
    Returns previous frame block whose outer boundary of boundaryWidth best
    matches the available boundary of the lost block.

    Raises MotionError when no candidate is feasible so the caller may fall
    back to TR.
    """
    luma = planesOf(seq)
    prior = _previous(luma, block)
    area = makeDecisionArea(mask, block, boundaryWidth)
    vector, error = estimateMotion(luma, mask, area, -1, dMax, requireBlock=True)
    logger.debug("EBMA %s vector %s error %d.", block, vector, error)
    return _copy(luma, prior, block, vector)


def concealDmve(seq, mask, block, dMax=16, bandWidth=4):
    """
    Returns previous frame block displaced by the motion vector estimated on
    the band of bandWidth around the lost block. Falls back to TR when the
    estimation finds no feasible candidate.
    """
    luma = planesOf(seq)
    prior = _previous(luma, block)
    area = makeDecisionArea(mask, block, bandWidth)
    try:
        vector, error = estimateMotion(luma, mask, area, -1, dMax, requireBlock=True)
    except MotionError as ex:
        logger.warning("DMVE falls back to TR for %s: %s", block, ex)
        return concealTr(luma, mask, block)
    logger.debug("DMVE %s vector %s error %d.", block, vector, error)
    return _copy(luma, prior, block, vector)
