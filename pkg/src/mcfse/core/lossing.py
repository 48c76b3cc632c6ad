# -*- encoding: utf-8 -*-
"""
mcfse.core.lossing module

Block loss patterns, availability masks and corrupted sequences
"""
import os
from collections import namedtuple

import numpy as np

from .. import help
from ..mcfsing import LossError, ValidationError
from ..help.helping import writeAtomic

logger = help.ogler.getLogger()


LossBlock = namedtuple("LossBlock", "frame x0 y0 size")  # square lost block


def blockOrder(block):
    """
    Returns sort key of block for concealment order, ascending frame then
    raster order within the frame
    """
    return (block.frame, block.y0, block.x0)


class LossMask:
    """
    LossMask partitions the pixels of a sequence into received and lost.

    Attributes:
        available (np.ndarray): read only bool array [t, y, x], False exactly on
            the union of the lost block rectangles
        blocks (tuple[LossBlock]): lost blocks in concealment order

    Properties:
        width (int): frame width in pixels
        height (int): frame height in pixels
        frameCount (int): number of frames
        lostCount (int): number of lost pixels
    """

    def __init__(self, width, height, frameCount, blocks=()):
        """
        Parameters:
            width (int): frame width in pixels
            height (int): frame height in pixels
            frameCount (int): number of frames
            blocks (iterable): LossBlock or (frame, x0, y0, size) tuples
        """
        if width <= 0 or height <= 0 or frameCount < 0:
            raise LossError(f"Invalid mask dimensions {width}x{height}x{frameCount}.")

        available = np.ones((frameCount, height, width), dtype=bool)
        checked = []
        for block in blocks:
            block = LossBlock(*(int(v) for v in block))
            if block.size <= 0:
                raise LossError(f"Invalid block size in {block}.")
            if not 0 <= block.frame < frameCount:
                raise LossError(f"Block {block} frame outside [0, {frameCount}).")
            if (block.x0 < 0 or block.y0 < 0 or
                    block.x0 + block.size > width or block.y0 + block.size > height):
                raise LossError(f"Block {block} not inside {width}x{height} frame.")
            available[block.frame, block.y0:block.y0 + block.size,
                      block.x0:block.x0 + block.size] = False
            checked.append(block)

        available.flags.writeable = False
        self.available = available
        self.blocks = tuple(sorted(checked, key=blockOrder))


    @property
    def width(self):
        return self.available.shape[2]


    @property
    def height(self):
        return self.available.shape[1]


    @property
    def frameCount(self):
        return self.available.shape[0]


    @property
    def lostCount(self):
        return int(self.available.size - np.count_nonzero(self.available))


    def frames(self):
        """
        Returns sorted list of frame indices with at least one lost block
        """
        return sorted({block.frame for block in self.blocks})


    def __repr__(self):
        return (f"LossMask({self.width}x{self.height}x{self.frameCount}, "
                f"blocks={len(self.blocks)})")


def availability(mask):
    """
    Returns bool availability array [t, y, x] of mask, which is either a
    LossMask or a working availability array updated as blocks get concealed
    """
    if isinstance(mask, LossMask):
        return mask.available
    available = np.asarray(mask)
    if available.ndim != 3:
        raise ValidationError(f"Expected 3D availability got {available.ndim}D.")
    return available.astype(bool, copy=False)


def buildIsolatedPattern(frames, blockSize=16, strideX=64, strideY=64, offset=16,
                         *, width, height, frameCount):
    """
    Returns LossMask with a rectangular grid of isolated lost blocks at
    (offset + i*strideX, offset + j*strideY) in each listed frame. Only blocks
    fully inside the frame are kept.

    Parameters:
        frames (iterable[int]): 0-based frame indices
        blockSize (int): block edge length in pixels
        strideX (int): horizontal grid stride, at least blockSize
        strideY (int): vertical grid stride, at least blockSize
        offset (int): grid origin in both directions
        width (int): frame width
        height (int): frame height
        frameCount (int): number of frames
    """
    if blockSize <= 0:
        raise LossError(f"Invalid block size {blockSize}.")
    if strideX < blockSize or strideY < blockSize:
        raise LossError(f"Stride {strideX}x{strideY} below block size {blockSize}"
                        f" would merge blocks.")
    if offset < 0:
        raise LossError(f"Invalid grid offset {offset}.")

    blocks = []
    for frame in sorted(set(int(f) for f in frames)):
        if not 0 <= frame < frameCount:
            raise LossError(f"Frame {frame} outside [0, {frameCount}).")
        for y0 in range(offset, height - blockSize + 1, strideY):
            for x0 in range(offset, width - blockSize + 1, strideX):
                blocks.append(LossBlock(frame, x0, y0, blockSize))

    logger.debug("Built isolated pattern with %d blocks.", len(blocks))
    return LossMask(width, height, frameCount, blocks)


def applyLoss(seq, mask):
    """
    Returns new Sequence with every lost sample of mask set to 0.
    The input sequence is untouched.
    """
    if seq.luma.shape != mask.available.shape:
        raise LossError(f"Mask {mask.available.shape} does not match sequence"
                        f" {seq.luma.shape}.")
    luma = seq.luma.copy()
    luma[~mask.available] = 0
    return seq.replace(luma)


def loadPattern(path, width, height, frameCount):
    """
    Returns LossMask read from pattern text file at path with one lost block
    per line given as 'frame x0 y0 size'. Blank lines and # comments are
    ignored.
    """
    blocks = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 4:
                raise LossError(f"{os.path.basename(path)} line {number} needs"
                                f" 'frame x0 y0 size' got {line!r}.")
            try:
                blocks.append(LossBlock(*(int(field) for field in fields)))
            except ValueError as ex:
                raise LossError(f"{os.path.basename(path)} line {number} has"
                                f" non integer field in {line!r}.") from ex
    return LossMask(width, height, frameCount, blocks)


def dumpPattern(mask, path):
    """
    Atomically write blocks of mask to pattern text file at path
    """
    lines = ["# frame x0 y0 size"]
    lines.extend(f"{b.frame} {b.x0} {b.y0} {b.size}" for b in mask.blocks)
    writeAtomic(path, "\n".join(lines) + "\n")
