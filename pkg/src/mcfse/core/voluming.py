# -*- encoding: utf-8 -*-
"""
mcfse.core.voluming module

Assembly of the spatio-temporal extrapolation volume around a lost block.
Volume arrays are indexed [p, n, m] with p the plane (time), n the row and m
the column inside the window.
"""
from collections import namedtuple
from dataclasses import dataclass, astuple

import numpy as np

from .. import help
from ..mcfsing import ValidationError, VolumeError
from .videoing import planesOf
from .lossing import availability

logger = help.ogler.getLogger()


@dataclass(frozen=True)
class LabelCodex:
    """
    LabelCodex is codex of per sample volume labels.
    """
    unavailable: int = 0  # outside frame or lost in a neighbor frame
    support:     int = 1  # received or already concealed sample, area A
    lost:        int = 2  # the lost block itself, area B

    def __iter__(self):
        return iter(astuple(self))


LabelDex = LabelCodex()  # Make instance


Rect = namedtuple("Rect", "m0 n0 size")  # block position inside a plane


class ExtrapolationVolume:
    """
    ExtrapolationVolume is the M x N x P cube of samples cut around a lost
    block from its own frame and from neighbor frames, optionally displaced by
    motion vectors so the content of all planes lines up.

    Attributes:
        samples (np.ndarray): float64 [p, n, m], 0.0 wherever not SUPPORT
        labels (np.ndarray): uint8 [p, n, m] LabelDex values
        block (LossBlock): the lost block
        centerPlane (int): plane index p of the block's frame
        blockRect (Rect): location of the block inside the center plane
        offsets (tuple[int]): frame offset κ of each plane
        dropped (tuple[int]): requested offsets dropped past the sequence ends
        vectors (tuple): (dx, dy) displacement applied to each plane
        aligned (bool): True when motion vectors were applied

    Properties:
        M, N, P (int): window width, height and plane count
    """

    def __init__(self, samples, labels, block, centerPlane, blockRect,
                 offsets, dropped=(), vectors=None, aligned=False):
        self.samples = samples
        self.labels = labels
        self.block = block
        self.centerPlane = centerPlane
        self.blockRect = blockRect
        self.offsets = tuple(offsets)
        self.dropped = tuple(dropped)
        self.vectors = tuple(vectors) if vectors is not None else tuple((0, 0) for _ in offsets)
        self.aligned = aligned


    @property
    def M(self):
        return self.samples.shape[2]


    @property
    def N(self):
        return self.samples.shape[1]


    @property
    def P(self):
        return self.samples.shape[0]


    @property
    def support(self):
        """
        Returns bool array [p, n, m] of SUPPORT samples
        """
        return self.labels == LabelDex.support


    def __repr__(self):
        return (f"ExtrapolationVolume({self.M}x{self.N}x{self.P}, "
                f"offsets={self.offsets}, aligned={self.aligned})")


def assembleVolume(seq, mask, block, vectors=None, nP=2, nF=2, border=16):
    """
    Returns ExtrapolationVolume around block.

    The center plane is the (size + 2*border) square window of frame τ
    around the block. The plane at offset κ is the same window of frame τ+κ
    displaced by the κ motion vector, or not displaced when vectors is None.
    Samples outside the frame or unavailable in the working mask are labeled
    UNAVAILABLE. Offsets past either end of the sequence are dropped.

    Parameters:
        seq (Sequence | np.ndarray): luma source, possibly partly concealed
        mask (LossMask | np.ndarray): availability, concealed blocks available
        block (LossBlock): lost block
        vectors (MotionVectorSet | None): motion per offset, None for 3D-FSE
        nP (int): number of previous frames
        nF (int): number of following frames
        border (int): window margin around the block in pixels
    """
    if nP < 0 or nF < 0 or border < 0:
        raise ValidationError(f"Invalid volume extent nP={nP} nF={nF} border={border}.")
    luma = planesOf(seq)
    available = availability(mask)
    if luma.shape != available.shape:
        raise ValidationError(f"Mask {available.shape} does not match sequence {luma.shape}.")
    frameCount, height, width = luma.shape
    if not 0 <= block.frame < frameCount:
        raise VolumeError(f"Block {block} frame outside sequence.")

    edge = block.size + 2 * border
    offsets = [k for k in range(-nP, nF + 1) if 0 <= block.frame + k < frameCount]
    dropped = [k for k in range(-nP, nF + 1) if k not in offsets]
    if dropped:
        logger.debug("Dropped offsets %s for %s at sequence end.", dropped, block)

    samples = np.zeros((len(offsets), edge, edge), dtype=np.float64)
    labels = np.full((len(offsets), edge, edge), LabelDex.unavailable, dtype=np.uint8)
    shifts = []
    for p, kappa in enumerate(offsets):
        dx, dy = vectors.vector(kappa) if (vectors is not None and kappa) else (0, 0)
        shifts.append((dx, dy))
        xs = np.arange(block.x0 - border, block.x0 + block.size + border) + dx
        ys = np.arange(block.y0 - border, block.y0 + block.size + border) + dy
        cols = (xs >= 0) & (xs < width)
        rows = (ys >= 0) & (ys < height)
        inside = rows[:, np.newaxis] & cols[np.newaxis, :]
        yc = np.clip(ys, 0, height - 1)[:, np.newaxis]
        xc = np.clip(xs, 0, width - 1)[np.newaxis, :]
        t = block.frame + kappa
        good = inside & available[t, yc, xc]
        labels[p][good] = LabelDex.support
        samples[p][good] = luma[t, yc, xc][good]

    center = offsets.index(0)
    rect = Rect(border, border, block.size)
    labels[center, rect.n0:rect.n0 + rect.size, rect.m0:rect.m0 + rect.size] = LabelDex.lost
    samples[center, rect.n0:rect.n0 + rect.size, rect.m0:rect.m0 + rect.size] = 0.0

    if not np.any(labels == LabelDex.support):
        raise VolumeError(f"No support samples around {block}.")

    return ExtrapolationVolume(samples, labels, block, center, rect, offsets,
                               dropped=dropped, vectors=shifts,
                               aligned=vectors is not None)
