# -*- encoding: utf-8 -*-
"""
mcfse.app.synthing module

Synthetic test sequences with known motion. Content is a smooth random
texture made by low pass filtering white noise in the frequency domain.
"""
from dataclasses import dataclass, astuple

import numpy as np

from ..mcfsing import ValidationError
from ..core.videoing import Sequence


@dataclass(frozen=True)
class SynthCodex:
    """
    SynthCodex is codex of synthetic sequence kinds.
    """
    static:    str = 'static'  # identical frames
    translate: str = 'translate'  # global translation by motion per frame
    zoom:      str = 'zoom'  # fullpel crop resample zoom in
    cut:       str = 'cut'  # translation with scene cut halfway

    def __iter__(self):
        return iter(astuple(self))


SynthDex = SynthCodex()  # Make instance

SYNTH_PREFIX = "synthetic:"


def makeTexture(width, height, seed=0, cutoff=0.06, low=32.0, high=223.0):
    """
    Returns float64 [height, width] smooth texture scaled to [low, high].

    Parameters:
        width (int): pixels
        height (int): pixels
        seed (int): random generator seed
        cutoff (float): gaussian low pass width in cycles per pixel
        low (float): minimum sample value
        high (float): maximum sample value
    """
    if width <= 0 or height <= 0:
        raise ValidationError(f"Invalid texture size {width}x{height}.")
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((height, width))
    fy = np.fft.fftfreq(height)[:, np.newaxis]
    fx = np.fft.fftfreq(width)[np.newaxis, :]
    gain = np.exp(-(fx * fx + fy * fy) / (2.0 * cutoff * cutoff))
    texture = np.real(np.fft.ifft2(np.fft.fft2(noise) * gain))
    span = texture.max() - texture.min()
    if span <= 0.0:
        return np.full((height, width), (low + high) / 2.0)
    return low + (texture - texture.min()) * (high - low) / span


def _quantize(frames):
    return np.clip(np.floor(np.asarray(frames) + 0.5), 0, 255).astype(np.uint8)


def makeStatic(width, height, frames, seed=0):
    """
    Returns Sequence of identical textured frames
    """
    texture = _quantize(makeTexture(width, height, seed))
    return Sequence(np.repeat(texture[np.newaxis], frames, axis=0))


def makeTranslation(width, height, frames, motion=(8, 0), seed=0):
    """
    Returns Sequence whose content moves by motion (dx, dy) pixels per frame
    so v[x, y, t] == v[x + k*dx, y + k*dy, t + k] wherever both exist.
    """
    dx, dy = (int(v) for v in motion)
    reach = max(frames - 1, 0)
    canvas = _quantize(makeTexture(width + abs(dx) * reach,
                                   height + abs(dy) * reach, seed))
    ox, oy = max(dx, 0) * reach, max(dy, 0) * reach
    luma = np.empty((frames, height, width), dtype=np.uint8)
    for t in range(frames):
        x, y = ox - t * dx, oy - t * dy
        luma[t] = canvas[y:y + height, x:x + width]
    return Sequence(luma)


def makeZoom(width, height, frames, rate=0.02, seed=0):
    """
    Returns Sequence zooming into the texture by scale 1 + rate*t, resampled
    at fullpel with nearest neighbors
    """
    if rate < 0:
        raise ValidationError(f"Invalid zoom rate {rate}.")
    canvas = _quantize(makeTexture(width, height, seed))
    cx, cy = (width - 1) / 2.0, (height - 1) / 2.0
    xs, ys = np.arange(width) - cx, np.arange(height) - cy
    luma = np.empty((frames, height, width), dtype=np.uint8)
    for t in range(frames):
        scale = 1.0 + rate * t
        cols = np.clip(np.floor(cx + xs / scale + 0.5).astype(np.int64), 0, width - 1)
        rows = np.clip(np.floor(cy + ys / scale + 0.5).astype(np.int64), 0, height - 1)
        luma[t] = canvas[rows[:, np.newaxis], cols[np.newaxis, :]]
    return Sequence(luma)


def makeSceneCut(width, height, frames, motion=(0, 0), cut=None, seed=0):
    """
    Returns Sequence translating by motion whose content switches to an
    unrelated texture at frame cut, default halfway
    """
    cut = frames // 2 if cut is None else int(cut)
    first = makeTranslation(width, height, frames, motion, seed)
    second = makeTranslation(width, height, frames, motion, seed + 1)
    luma = first.luma.copy()
    luma[cut:] = second.luma[cut:]
    return Sequence(luma)


def makeSynthetic(kind, width=176, height=144, frames=30, motion=(8, 0), seed=0):
    """
    Returns synthetic Sequence of kind, a SynthDex value optionally prefixed
    with 'synthetic:'
    """
    if kind.startswith(SYNTH_PREFIX):
        kind = kind[len(SYNTH_PREFIX):]
    if frames < 0:
        raise ValidationError(f"Invalid frame count {frames}.")
    if kind == SynthDex.static:
        return makeStatic(width, height, frames, seed)
    if kind == SynthDex.translate:
        return makeTranslation(width, height, frames, motion, seed)
    if kind == SynthDex.zoom:
        return makeZoom(width, height, frames, seed=seed)
    if kind == SynthDex.cut:
        return makeSceneCut(width, height, frames, motion, seed=seed)
    raise ValidationError(f"Unknown synthetic kind {kind!r}, expected one of"
                          f" {', '.join(SynthDex)}.")
