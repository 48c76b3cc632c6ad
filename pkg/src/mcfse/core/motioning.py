# -*- encoding: utf-8 -*-
"""
mcfse.core.motioning module

Fullpel motion estimation around a lost block by matching the ring of
received pixels that surrounds it, plus the reliability check that decides
whether the resulting vectors may be used to align the extrapolation volume.
"""
from collections import namedtuple

import numpy as np

from .. import help
from ..mcfsing import ValidationError, MotionError, InfeasibleError
from .videoing import planesOf
from .lossing import availability

logger = help.ogler.getLogger()


MotionEstimate = namedtuple("MotionEstimate", "vector error")  # ((dx, dy), sse)


class DecisionArea:
    """
    DecisionArea is the ring of available pixels of width .bandWidth around a
    lost block in the block's own frame, clipped to the frame.

    Attributes:
        block (LossBlock): lost block the ring surrounds
        bandWidth (int): ring width in pixels
        xs (np.ndarray): x coordinates of ring pixels
        ys (np.ndarray): y coordinates of ring pixels

    Properties:
        frame (int): frame index τ of the block
        size (int): number of ring pixels |M|
    """

    def __init__(self, block, bandWidth, xs, ys):
        self.block = block
        self.bandWidth = bandWidth
        self.xs = np.asarray(xs, dtype=np.int64)
        self.ys = np.asarray(ys, dtype=np.int64)


    @property
    def frame(self):
        return self.block.frame


    @property
    def size(self):
        return int(self.xs.size)


    def __repr__(self):
        return f"DecisionArea(block={self.block}, bandWidth={self.bandWidth}, size={self.size})"


def makeDecisionArea(mask, block, bandWidth=4):
    """
    Returns DecisionArea of available pixels within bandWidth of block.
    Pixels of other lost blocks not yet concealed are excluded so |M| shrinks.

    Parameters:
        mask (LossMask | np.ndarray): mask or working availability [t, y, x]
        block (LossBlock): lost block
        bandWidth (int): ring width in pixels
    """
    if bandWidth < 1:
        raise ValidationError(f"Invalid band width {bandWidth}.")
    available = availability(mask)
    _, height, width = available.shape
    x0, y0, size = block.x0, block.y0, block.size

    left, right = max(0, x0 - bandWidth), min(width, x0 + size + bandWidth)
    top, bottom = max(0, y0 - bandWidth), min(height, y0 + size + bandWidth)
    ys, xs = np.mgrid[top:bottom, left:right]
    outside = ~((xs >= x0) & (xs < x0 + size) & (ys >= y0) & (ys < y0 + size))
    keep = outside & available[block.frame, ys, xs]
    return DecisionArea(block, bandWidth, xs[keep], ys[keep])


def _reference(luma, frame, kappa):
    t = frame + kappa
    if not 0 <= t < luma.shape[0]:
        raise ValidationError(f"Reference frame {t} for offset {kappa} outside"
                              f" [0, {luma.shape[0]}).")
    return t


def blockAvailability(available, t, block, dxs, dys):
    """
    Returns bool array, True where the block displaced by (dxs[i], dys[i])
    lies on available pixels of frame t. Displacements must keep the block
    inside the frame.
    """
    lost = np.zeros((available.shape[1] + 1, available.shape[2] + 1), dtype=np.int64)
    lost[1:, 1:] = np.cumsum(np.cumsum(~available[t], axis=0), axis=1)
    top, left = block.y0 + np.asarray(dys), block.x0 + np.asarray(dxs)
    bottom, right = top + block.size, left + block.size
    count = lost[bottom, right] - lost[top, right] - lost[bottom, left] + lost[top, left]
    return count == 0


def sseForCandidate(seq, mask, area, kappa, candidate, requireBlock=False):
    """
    Returns sum of squared errors between the ring pixels in frame τ and the
    ring displaced by candidate in frame τ+kappa.

    Raises InfeasibleError when the displaced ring or block leaves the
    reference frame or the ring touches unavailable reference pixels. With
    requireBlock the displaced block must be available too.

    Parameters:
        seq (Sequence | np.ndarray): luma source
        mask (LossMask | np.ndarray): availability
        area (DecisionArea): ring M
        kappa (int): frame offset
        candidate (tuple): (dx, dy) displacement
        requireBlock (bool): True means displaced block pixels must be available
    """
    luma = planesOf(seq)
    available = availability(mask)
    t = _reference(luma, area.frame, kappa)
    dx, dy = (int(v) for v in candidate)
    _, height, width = luma.shape
    block = area.block

    xs, ys = area.xs + dx, area.ys + dy
    if (block.x0 + dx < 0 or block.y0 + dy < 0 or
            block.x0 + block.size + dx > width or block.y0 + block.size + dy > height):
        raise InfeasibleError(f"Candidate {(dx, dy)} moves block outside frame {t}.")
    if area.size and (xs.min() < 0 or ys.min() < 0 or
                      xs.max() >= width or ys.max() >= height):
        raise InfeasibleError(f"Candidate {(dx, dy)} moves ring outside frame {t}.")
    if not available[t, ys, xs].all():
        raise InfeasibleError(f"Candidate {(dx, dy)} hits unavailable pixels in frame {t}.")
    if requireBlock and not blockAvailability(available, t, block, [dx], [dy])[0]:
        raise InfeasibleError(f"Candidate {(dx, dy)} copies unavailable block pixels"
                              f" in frame {t}.")

    cur = luma[area.frame, area.ys, area.xs].astype(np.int64)
    ref = luma[t, ys, xs].astype(np.int64)
    return int(np.sum((cur - ref) ** 2))


def estimateMotion(seq, mask, area, kappa, dMax=16, requireBlock=False):
    """
    Returns MotionEstimate ((dx, dy), sse) minimizing the ring sum of squared
    errors over all feasible fullpel candidates |dx|, |dy| <= dMax.
    Ties prefer the smaller vector norm then lexicographic (dx, dy).
    With requireBlock, candidates whose displaced block covers unavailable
    reference pixels are infeasible, as needed when the block is copied.

    Raises MotionError when no candidate is feasible or the ring is empty.
    """
    if dMax < 0:
        raise ValidationError(f"Invalid search range {dMax}.")
    if area.size == 0:
        raise MotionError(f"Empty decision area around {area.block}.")

    luma = planesOf(seq)
    available = availability(mask)
    t = _reference(luma, area.frame, kappa)
    _, height, width = luma.shape
    block = area.block

    span = np.arange(-dMax, dMax + 1, dtype=np.int64)
    dys, dxs = (grid.ravel() for grid in np.meshgrid(span, span, indexing="ij"))

    # candidate must keep block and ring inside the reference frame
    feasible = ((block.x0 + dxs >= 0) & (block.y0 + dys >= 0) &
                (block.x0 + block.size + dxs <= width) &
                (block.y0 + block.size + dys <= height) &
                (area.xs.min() + dxs >= 0) & (area.ys.min() + dys >= 0) &
                (area.xs.max() + dxs < width) & (area.ys.max() + dys < height))
    dxs, dys = dxs[feasible], dys[feasible]
    if dxs.size:
        xs = area.xs[np.newaxis, :] + dxs[:, np.newaxis]
        ys = area.ys[np.newaxis, :] + dys[:, np.newaxis]
        usable = available[t, ys, xs].all(axis=1)
        if requireBlock:
            usable &= blockAvailability(available, t, block, dxs, dys)
        dxs, dys, xs, ys = dxs[usable], dys[usable], xs[usable], ys[usable]

    if not dxs.size:
        raise MotionError(f"No feasible candidate for {area.block} at offset"
                          f" {kappa} within {dMax}.")

    cur = luma[area.frame, area.ys, area.xs].astype(np.int64)
    sse = np.sum((luma[t, ys, xs].astype(np.int64) - cur[np.newaxis, :]) ** 2, axis=1)
    order = np.lexsort((dys, dxs, dxs * dxs + dys * dys, sse))  # last key primary
    best = order[0]
    return MotionEstimate((int(dxs[best]), int(dys[best])), int(sse[best]))


class MotionVectorSet:
    """
    MotionVectorSet holds one MotionEstimate per frame offset κ around a lost
    block.

    Attributes:
        estimates (dict): MotionEstimate keyed by int offset κ
        areaSize (int): number of ring pixels |M| the errors are summed over
        dMax (int): search range the vectors were found in

    Properties:
        kappas (list[int]): sorted offsets
        errors (list[int]): errors in offset order
    """

    def __init__(self, estimates=None, areaSize=0, dMax=16):
        self.estimates = dict(estimates) if estimates else {}
        self.areaSize = int(areaSize)
        self.dMax = int(dMax)
        for kappa, (vector, error) in self.estimates.items():
            if kappa == 0:
                raise ValidationError("Offset 0 is the lost block frame itself.")
            if abs(vector[0]) > self.dMax or abs(vector[1]) > self.dMax:
                raise ValidationError(f"Vector {vector} exceeds range {self.dMax}.")
            if error < 0:
                raise ValidationError(f"Negative error {error}.")


    @property
    def kappas(self):
        return sorted(self.estimates)


    @property
    def errors(self):
        return [self.estimates[kappa].error for kappa in self.kappas]


    def vector(self, kappa):
        """
        Returns (dx, dy) for offset kappa, (0, 0) when kappa has no estimate
        """
        if kappa in self.estimates:
            return self.estimates[kappa].vector
        return (0, 0)


    def __getitem__(self, kappa):
        return self.estimates[kappa]


    def __contains__(self, kappa):
        return kappa in self.estimates


    def __iter__(self):
        return iter(self.kappas)


    def __len__(self):
        return len(self.estimates)


    def __repr__(self):
        vectors = ", ".join(f"{k}: {self.estimates[k].vector}" for k in self.kappas)
        return f"MotionVectorSet({{{vectors}}}, areaSize={self.areaSize})"


def estimateMotionSet(seq, mask, block, nP=2, nF=2, dMax=16, bandWidth=4):
    """
    Returns MotionVectorSet with an estimate for every offset in
    [-nP, -1] and [1, nF] whose frame exists in the sequence.

    Raises MotionError when any existing offset has no feasible candidate.
    """
    luma = planesOf(seq)
    area = makeDecisionArea(mask, block, bandWidth)
    estimates = {}
    for kappa in range(-nP, nF + 1):
        if kappa == 0 or not 0 <= block.frame + kappa < luma.shape[0]:
            continue
        estimates[kappa] = estimateMotion(luma, mask, area, kappa, dMax)
    vectors = MotionVectorSet(estimates, areaSize=area.size, dMax=dMax)
    logger.debug("Motion for %s: %s.", block, vectors)
    return vectors


def checkReliability(vectors, areaSize=None, tAbs=100.0, tRel=3.0):
    """
    Returns True when the motion vectors may be used for alignment.

    Unreliable when the largest error per ring pixel exceeds tAbs or when the
    spread (max - min) / mean of the errors exceeds tRel. A zero mean counts
    as zero spread. A non positive threshold always rejects.

    Parameters:
        vectors (MotionVectorSet | iterable): estimates or raw errors
        areaSize (int | None): |M|, defaults to vectors.areaSize
        tAbs (float): absolute per pixel error threshold
        tRel (float): relative spread threshold
    """
    if isinstance(vectors, MotionVectorSet):
        errors = vectors.errors
        areaSize = vectors.areaSize if areaSize is None else areaSize
    else:
        errors = [float(error) for error in vectors]
    if not errors:
        raise ValidationError("Reliability check needs at least one estimate.")
    if not areaSize or areaSize <= 0:
        raise ValidationError(f"Invalid decision area size {areaSize}.")

    if tAbs <= 0 or tRel <= 0:
        return False

    errors = np.asarray(errors, dtype=np.float64)
    if errors.max() / areaSize > tAbs:
        return False
    mean = errors.mean()
    spread = (errors.max() - errors.min()) / mean if mean > 0 else 0.0
    return not spread > tRel
