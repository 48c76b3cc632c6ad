# -*- encoding: utf-8 -*-
"""
mcfse.core.videoing module

Raw video input and output. Only luma is processed, chroma is carried along
unmodified when a stream provides it so concealed streams stay viewable.

Planes are numpy uint8 arrays indexed [t, y, x] so sample v[x, y, t] is
luma[t, y, x].
"""
from dataclasses import dataclass, astuple
from fractions import Fraction

import numpy as np

from .. import help
from ..mcfsing import (ValidationError, MagicError, HeaderError,
                       FrameMarkerError, TruncationError, FrameCountError)
from ..help.helping import writeAtomic

logger = help.ogler.getLogger()


MAGIC = b"YUV4MPEG2"
FRAME = b"FRAME"
NEUTRAL = 128  # synthesized chroma value


@dataclass(frozen=True)
class ChromaCodex:
    """
    ChromaCodex is codex of supported chroma layouts.
    """
    yuv420: str = '420'  # planar 4:2:0
    mono:   str = 'mono'  # luma only 4:0:0

    def __iter__(self):
        return iter(astuple(self))


ChromaDex = ChromaCodex()  # Make instance

# Y4M colorspace tags mapped to chroma layout
Colorspaces = {
    b"420jpeg": ChromaDex.yuv420,
    b"420paldv": ChromaDex.yuv420,
    b"420mpeg2": ChromaDex.yuv420,
    b"420": ChromaDex.yuv420,
    b"mono": ChromaDex.mono,
}


def chromaShape(width, height):
    """
    Returns (height, width) of one 4:2:0 chroma plane
    """
    return ((height + 1) // 2, (width + 1) // 2)


def frameBytes(width, height, chroma=ChromaDex.yuv420):
    """
    Returns byte count of one planar frame payload
    """
    if chroma == ChromaDex.mono:
        return width * height
    if chroma == ChromaDex.yuv420:
        ch, cw = chromaShape(width, height)
        return width * height + 2 * ch * cw
    raise ValidationError(f"Unsupported chroma mode {chroma!r}.")


def _frozen(plane):
    """
    Returns read only uint8 array of plane, plane itself when it already is one
    """
    if (isinstance(plane, np.ndarray) and plane.dtype == np.uint8
            and not plane.flags.writeable):
        return plane
    plane = np.array(plane, dtype=np.uint8, copy=True)
    plane.flags.writeable = False
    return plane


class Sequence:
    """
    Sequence of 8 bit luma frames, the signal v[x, y, t].
    Instances are immutable, planes are read only arrays.

    Attributes:
        luma (np.ndarray): uint8 planes of shape (frameCount, height, width)
        frameRate (Fraction | None): informational frame rate
        chroma (tuple | None): (u, v) uint8 planes of shape
            (frameCount, (height+1)//2, (width+1)//2) carried through unmodified,
            None when the source had no chroma

    Properties:
        width (int): pixels
        height (int): pixels
        frameCount (int): number of frames
    """

    def __init__(self, luma, frameRate=Fraction(30, 1), chroma=None):
        """
        Parameters:
            luma (array like): (frameCount, height, width) or single
                (height, width) frame of integral samples in [0, 255]
            frameRate (Fraction | None): frame rate
            chroma (tuple | None): (u, v) chroma planes
        """
        luma = np.asarray(luma)
        if luma.ndim == 2:
            luma = luma[np.newaxis]
        if luma.ndim != 3:
            raise ValidationError(f"Expected 3D luma array got {luma.ndim}D.")
        if luma.dtype != np.uint8:
            if luma.size and (luma.min() < 0 or luma.max() > 255):
                raise ValidationError("Luma samples outside [0, 255].")
            if luma.size and not np.all(np.equal(np.mod(luma, 1), 0)):
                raise ValidationError("Luma samples not integral.")
        self.luma = _frozen(luma)
        self.frameRate = frameRate

        if chroma is not None:
            u, v = (_frozen(plane) for plane in chroma)
            shape = (self.frameCount, ) + chromaShape(self.width, self.height)
            if u.shape != shape or v.shape != shape:
                raise ValidationError(f"Chroma planes {u.shape}, {v.shape} do not"
                                      f" match expected {shape}.")
            if not (isinstance(chroma, tuple) and u is chroma[0] and v is chroma[1]):
                chroma = (u, v)  # shared planes keep the caller's tuple
        self.chroma = chroma


    @property
    def width(self):
        return self.luma.shape[2]


    @property
    def height(self):
        return self.luma.shape[1]


    @property
    def frameCount(self):
        return self.luma.shape[0]


    def frame(self, t):
        """
        Returns read only luma plane of frame t
        """
        return self.luma[t]


    def replace(self, luma):
        """
        Returns new Sequence with luma replaced and frame rate and chroma kept
        """
        luma = np.asarray(luma)
        if luma.shape != self.luma.shape:
            raise ValidationError(f"Replacement luma {luma.shape} does not match"
                                  f" {self.luma.shape}.")
        return Sequence(luma, frameRate=self.frameRate, chroma=self.chroma)


    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return (self.luma.shape == other.luma.shape and
                np.array_equal(self.luma, other.luma))

    __hash__ = None

    def __repr__(self):
        return (f"Sequence(width={self.width}, height={self.height}, "
                f"frameCount={self.frameCount})")


def planesOf(seq):
    """
    Returns luma planes [t, y, x] of seq, which is either a Sequence or a
    working uint8 array being concealed in place
    """
    if isinstance(seq, Sequence):
        return seq.luma
    luma = np.asarray(seq)
    if luma.ndim != 3:
        raise ValidationError(f"Expected 3D luma got {luma.ndim}D.")
    return luma


def _parseHeader(data):
    """
    Returns (width, height, frameRate, chroma, offset) parsed from Y4M stream
    header where offset is the index of the first frame marker.
    """
    if data[:len(MAGIC)] != MAGIC or data[len(MAGIC):len(MAGIC) + 1] not in (b" ", b"\n"):
        raise MagicError("Missing YUV4MPEG2 stream magic", offset=0)

    end = data.find(b"\n")
    if end < 0:
        raise HeaderError("Unterminated stream header", offset=len(data))

    width = height = None
    frameRate = Fraction(30, 1)
    chroma = ChromaDex.yuv420
    offset = len(MAGIC) + 1
    for token in data[len(MAGIC) + 1:end].split(b" "):
        if not token:
            offset += 1
            continue
        tag, val = token[:1], token[1:]
        try:
            if tag == b"W":
                width = int(val)
            elif tag == b"H":
                height = int(val)
            elif tag == b"F":
                num, den = (int(part) for part in val.split(b":"))
                frameRate = Fraction(num, den) if num and den else None
            elif tag == b"C":
                if val not in Colorspaces:
                    raise HeaderError(f"Unsupported colorspace {val.decode(errors='replace')}",
                                      offset=offset)
                chroma = Colorspaces[val]
        except ValueError as ex:
            raise HeaderError(f"Invalid header token {token.decode(errors='replace')}",
                              offset=offset) from ex
        offset += len(token) + 1  # I, A and X tags are informational

    if not width or not height or width < 0 or height < 0:
        raise HeaderError("Header does not declare positive width and height",
                          offset=0)
    return width, height, frameRate, chroma, end + 1


def parseY4m(data):
    """
    Returns Sequence parsed from Y4M stream bytes.

    Parameters:
        data (bytes): whole stream
    """
    data = bytes(data)
    width, height, frameRate, chroma, pos = _parseHeader(data)
    size = frameBytes(width, height, chroma)
    lumaSize = width * height
    ch, cw = chromaShape(width, height)

    lumas, us, vs = [], [], []
    while pos < len(data):
        if data[pos:pos + len(FRAME)] != FRAME:
            raise FrameMarkerError("Missing FRAME marker", offset=pos)
        nl = data.find(b"\n", pos)
        if nl < 0:
            raise TruncationError("Unterminated frame header", offset=pos)
        start = nl + 1
        if start + size > len(data):
            raise TruncationError(f"Frame {len(lumas)} payload needs {size} bytes"
                                  f" has {len(data) - start}", offset=start)
        lumas.append(np.frombuffer(data, dtype=np.uint8, count=lumaSize,
                                   offset=start).reshape(height, width))
        if chroma == ChromaDex.yuv420:
            us.append(np.frombuffer(data, dtype=np.uint8, count=ch * cw,
                                    offset=start + lumaSize).reshape(ch, cw))
            vs.append(np.frombuffer(data, dtype=np.uint8, count=ch * cw,
                                    offset=start + lumaSize + ch * cw).reshape(ch, cw))
        pos = start + size

    luma = np.stack(lumas) if lumas else np.zeros((0, height, width), dtype=np.uint8)
    planes = (np.stack(us), np.stack(vs)) if us else None
    logger.debug("Parsed Y4M %dx%d with %d frames.", width, height, len(lumas))
    return Sequence(luma, frameRate=frameRate, chroma=planes)


def loadY4m(path):
    """
    Returns Sequence loaded from Y4M (YUV4MPEG2) file at path.
    Only 4:2:0 and mono colorspaces are accepted.

    Parameters:
        path (str): file path
    """
    with open(path, "rb") as f:
        data = f.read()
    return parseY4m(data)


def loadRawYuv(path, width, height, chroma=ChromaDex.yuv420, frameRate=Fraction(30, 1)):
    """
    Returns Sequence loaded from headerless planar YUV file at path.

    Parameters:
        path (str): file path
        width (int): pixels
        height (int): pixels
        chroma (str): ChromaDex layout, '420' or 'mono'
        frameRate (Fraction): informational frame rate
    """
    if width <= 0 or height <= 0:
        raise ValidationError(f"Invalid dimensions {width}x{height}.")
    size = frameBytes(width, height, chroma)
    raw = np.fromfile(path, dtype=np.uint8)
    count, remainder = divmod(raw.size, size)
    if remainder:
        raise FrameCountError(f"File size {raw.size} is not a multiple of frame"
                              f" size {size}, remainder {remainder}.",
                              remainder=remainder)
    frames = raw.reshape(count, size)
    luma = frames[:, :width * height].reshape(count, height, width)
    planes = None
    if chroma == ChromaDex.yuv420:
        ch, cw = chromaShape(width, height)
        u = frames[:, width * height:width * height + ch * cw].reshape(count, ch, cw)
        v = frames[:, width * height + ch * cw:].reshape(count, ch, cw)
        planes = (u, v) if count else None
    return Sequence(luma, frameRate=frameRate, chroma=planes)


def encodeY4m(seq):
    """
    Returns Y4M stream bytes for Sequence. Always writes 4:2:0 using the
    sequence chroma when present, neutral 128 chroma otherwise.
    """
    rate = seq.frameRate if seq.frameRate is not None else Fraction(30, 1)
    header = (f"YUV4MPEG2 W{seq.width} H{seq.height} "
              f"F{rate.numerator}:{rate.denominator} Ip A1:1 C420jpeg\n")
    ch, cw = chromaShape(seq.width, seq.height)
    neutral = np.full((ch, cw), NEUTRAL, dtype=np.uint8).tobytes()
    parts = [header.encode("ascii")]
    for t in range(seq.frameCount):
        parts.append(FRAME + b"\n")
        parts.append(seq.luma[t].tobytes())
        if seq.chroma is not None:
            parts.append(seq.chroma[0][t].tobytes())
            parts.append(seq.chroma[1][t].tobytes())
        else:
            parts.append(neutral)
            parts.append(neutral)
    return b"".join(parts)


def writeY4m(seq, path):
    """
    Atomically write Sequence to Y4M file at path.
    """
    writeAtomic(path, encodeY4m(seq))


def encodePgm(frame):
    """
    Returns binary P5 PGM bytes with maxval 255 for 2D uint8 frame
    """
    frame = np.asarray(frame)
    if frame.ndim != 2:
        raise ValidationError(f"Expected 2D frame got {frame.ndim}D.")
    height, width = frame.shape
    return f"P5\n{width} {height}\n255\n".encode("ascii") + frame.astype(np.uint8).tobytes()


def writePgm(frame, path):
    """
    Atomically write one luma frame to binary PGM file at path.
    """
    writeAtomic(path, encodePgm(frame))
