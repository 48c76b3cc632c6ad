# -*- encoding: utf-8 -*-
"""
tests.core.test_extrapolating module

"""
import csv
import warnings

import numpy as np
import pytest

from mcfse.mcfsing import ConfigError, ExtrapolationError, ValidationError
from mcfse.core import extrapolating
from mcfse.core.extrapolating import FseConfig, FseState, FseModel
from mcfse.core.voluming import assembleVolume, LabelDex, ExtrapolationVolume
from mcfse.core.lossing import LossBlock, LossMask


def constantVolume(value=128, width=96, height=96):
    luma = np.full((5, height, width), value, dtype=np.uint8)
    block = LossBlock(2, 40, 40, 16)
    mask = LossMask(width, height, 5, [block])
    return assembleVolume(luma, mask, block, nP=2, nF=2, border=16)


def randomVolume(seed):
    rng = np.random.default_rng(seed)
    luma = rng.integers(0, 256, size=(3, 12, 12), dtype=np.uint8)
    block = LossBlock(1, 4, 4, 4)
    blocks = [block]
    if seed % 3 == 0:
        blocks.append(LossBlock(0, 6, 0, 3))  # extra hole in a neighbor plane
    mask = LossMask(12, 12, 3, blocks)
    return assembleVolume(luma, mask, block, nP=1, nF=1, border=2)


def test_fse_config():
    """
    Test FseConfig defaults and validation
    """
    config = FseConfig()
    assert config.fftDims == (64, 64, 16)
    assert config.gridShape == (16, 64, 64)
    assert config.gamma == 0.6
    assert config.rho == 0.8
    assert config.iterations == 100

    config = FseConfig(fftDims=[8, 4, 2])
    assert config.fftDims == (8, 4, 2)
    assert config.gridShape == (2, 4, 8)

    for kwa in (dict(fftDims=(8, 8)), dict(fftDims=(8, 0, 4)), dict(gamma=0.0),
                dict(gamma=1.5), dict(rho=1.0), dict(rho=0.0), dict(iterations=-1),
                dict(iterations=2.5)):
        with pytest.raises(ConfigError):
            FseConfig(**kwa)
    """Done Test"""


def test_make_weight():
    """
    Test isotropic weight decays with distance from the block middle
    """
    luma = np.full((3, 64, 64), 50, dtype=np.uint8)
    block = LossBlock(1, 20, 20, 5)
    mask = LossMask(64, 64, 3, [block])
    volume = assembleVolume(luma, mask, block, nP=1, nF=1, border=10)
    assert volume.M == 25
    weight = extrapolating.makeWeight(volume, 0.8)
    assert weight.center == (1.0, 12.0, 12.0)
    assert weight.rho == 0.8
    assert np.isclose(weight.w[1, 12, 22], 0.1073741824, rtol=1e-12)
    assert np.isclose(weight.w[0, 12, 12], 0.8, rtol=1e-12)
    assert np.all(weight.w[volume.labels == LabelDex.lost] == 0.0)
    assert weight.w[1, 12, 12] == 0.0  # center is lost
    assert np.isclose(weight.total, weight.w.sum())

    with pytest.raises(ValidationError):
        extrapolating.makeWeight(volume, 1.0)

    # unavailable and lost samples weigh the same, swapping them changes nothing
    mask = LossMask(64, 64, 3, [block, LossBlock(0, 12, 12, 6), LossBlock(2, 30, 14, 4)])
    volume = assembleVolume(luma, mask, block, nP=1, nF=1, border=18)
    labels = volume.labels
    assert (labels == LabelDex.unavailable).any() and (labels == LabelDex.lost).any()
    swapped = labels.copy()
    swapped[labels == LabelDex.unavailable] = LabelDex.lost
    swapped[labels == LabelDex.lost] = LabelDex.unavailable
    relabeled = ExtrapolationVolume(volume.samples, swapped, volume.block, volume.centerPlane,
                                    volume.blockRect, volume.offsets)
    assert np.array_equal(extrapolating.makeWeight(relabeled).w,
                          extrapolating.makeWeight(volume).w)
    """Done Test"""


def test_mirror():
    """
    Test mirror and mirrorBin
    """
    shape = (2, 3, 4)
    spectrum = np.arange(24).reshape(shape)
    mirrored = extrapolating.mirror(spectrum)
    for index in np.ndindex(shape):
        assert mirrored[index] == spectrum[extrapolating.mirrorBin(index, shape)]
    assert extrapolating.mirrorBin((0, 0, 0), shape) == (0, 0, 0)
    assert extrapolating.mirrorBin((1, 1, 2), shape) == (1, 2, 2)
    """Done Test"""


def test_project_reference():
    """
    Test projectReference by direct summation
    """
    volume = constantVolume()
    weight = extrapolating.makeWeight(volume)
    residual = np.where(volume.support, 37.0, 0.0)
    grid = FseConfig().gridShape
    assert np.isclose(extrapolating.projectReference(residual, weight, (0, 0, 0), grid), 37.0)
    assert extrapolating.projectReference(np.zeros(residual.shape), weight,
                                          (1, 2, 3), grid) == 0

    shape = (2, 4, 4)  # uniform weight on full grid gives orthogonal basis
    m = np.arange(4)[np.newaxis, np.newaxis, :]
    r = np.broadcast_to(np.cos(2 * np.pi * m / 4), shape)
    w = np.ones(shape)
    assert abs(extrapolating.projectReference(r, w, (0, 0, 2), shape)) < 1e-12
    assert abs(extrapolating.projectReference(r, w, (1, 0, 1), shape)) < 1e-12
    assert np.isclose(extrapolating.projectReference(r, w, (0, 0, 1), shape), 0.5)

    with pytest.raises(ExtrapolationError):
        extrapolating.projectReference(r, np.zeros(shape), (0, 0, 0), shape)
    """Done Test"""


def test_select_basis():
    """
    Test selectBasis picks the strongest conjugate pair, lowest index first
    """
    shape = (2, 4, 8)
    m = np.arange(8)[np.newaxis, np.newaxis, :]
    rw = np.broadcast_to(np.cos(2 * np.pi * m / 8), shape)
    R = np.fft.fftn(rw)
    assert extrapolating.selectBasis(R) == (0, 0, 1)
    assert extrapolating.mirrorBin((0, 0, 1), shape) == (0, 0, 7)

    R = np.fft.fftn(np.full(shape, 3.0))
    assert extrapolating.selectBasis(R) == (0, 0, 0)

    R = np.zeros(shape, dtype=complex)
    R[0, 1, 0] = 5.0
    R[0, 0, 3] = 5.0j
    assert extrapolating.selectBasis(R) == (0, 0, 3)

    with pytest.raises(ExtrapolationError):
        extrapolating.selectBasis(R, np.zeros(shape, dtype=complex))
    """Done Test"""


def test_fse_iterate():
    """
    Test one iteration on constant and zero volumes
    """
    volume = constantVolume()
    config = FseConfig()
    state = FseState(volume, extrapolating.makeWeight(volume), config)
    assert state.iteration == 0
    assert np.isclose(state.trace[0], 128.0 ** 2 * state.total)

    choice = extrapolating.fseIterate(state)
    assert choice.iteration == 1
    assert choice.bin == (0, 0, 0)
    assert choice.index == 0
    assert choice.paired == False
    assert np.isclose(choice.coefficient, 0.6 * 128)
    assert np.allclose(state.g, 0.6 * 128)
    assert np.allclose(state.residual[volume.support], 0.4 * 128)
    assert state.trace[1] < state.trace[0]

    volume = constantVolume(value=0)
    state = FseState(volume, extrapolating.makeWeight(volume), config)
    choice = extrapolating.fseIterate(state)
    assert choice.coefficient == 0
    assert not state.g.any()
    assert state.trace == [0.0, 0.0]

    with pytest.raises(ConfigError):
        FseState(volume, extrapolating.makeWeight(volume), FseConfig(fftDims=(32, 64, 16)))
    with pytest.raises(ExtrapolationError):
        FseState(volume, np.zeros(volume.samples.shape), config)
    with pytest.raises(ExtrapolationError):  # reference basis too large
        FseState(volume, extrapolating.makeWeight(volume), config, fast=False)
    """Done Test"""


def test_constant_convergence():
    """
    Test geometric convergence on a constant volume
    """
    volume = constantVolume()
    config = FseConfig(fftDims=(64, 64, 16), gamma=0.6, iterations=50)
    model = extrapolating.fseGenerateModel(volume, config, checkpoints=(0, 1, 50))
    rect = volume.blockRect
    lost = model.g[volume.centerPlane, rect.n0:rect.n0 + rect.size, rect.m0:rect.m0 + rect.size]
    assert np.max(np.abs(lost - 128.0)) < 1e-4
    assert np.max(np.abs(lost - 128.0)) < 1e-6 * 128
    assert all(c.bin == (0, 0, 0) for c in model.chosen[:20])
    for nu in range(1, 11):  # residual is 128 * 0.4**nu on support
        assert np.isclose(model.trace[nu], model.trace[0] * 0.16 ** nu, rtol=1e-9)
    assert len(model.trace) == 51
    slack = extrapolating.TRACE_TOLERANCE * (model.trace[0] + 1.0)
    assert all(b <= a + slack for a, b in zip(model.trace, model.trace[1:]))

    assert sorted(model.patches) == [0, 1, 50]
    assert np.all(model.patches[0] == 0)
    assert np.all(model.patches[1] == 77)  # 76.8 rounds up
    assert np.all(model.patches[50] == 128)
    assert np.all(extrapolating.cutPatch(model, volume) == 128)
    """Done Test"""


def test_fast_matches_reference():
    """
    Test frequency domain path equals the spatial reference path
    """
    config = FseConfig(fftDims=(8, 8, 4), iterations=20)
    for seed in range(100):
        volume = randomVolume(seed)
        assert (volume.P, volume.N, volume.M) == (3, 8, 8)
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # zero padded fftn must stay warning free
            fast = extrapolating.fseGenerateModel(volume, config, fast=True)
        slow = extrapolating.fseGenerateModel(volume, config, fast=False)
        assert [c.index for c in fast.chosen] == [c.index for c in slow.chosen]
        for a, b in zip(fast.chosen, slow.chosen):
            assert a.paired == b.paired
            assert abs(a.coefficient - b.coefficient) <= 1e-9 * max(abs(b.coefficient), 1.0)
        assert np.allclose(fast.g, slow.g, rtol=1e-9, atol=1e-9)
        assert np.allclose(fast.trace, slow.trace, rtol=1e-9)
        assert all(b <= a + 1e-9 * (fast.trace[0] + 1) for a, b in zip(fast.trace, fast.trace[1:]))
    """Done Test"""


def test_cosine_recovery():
    """
    Test a low frequency cosine on the grid is recovered inside the block
    """
    border, size = 8, 8
    edge = size + 2 * border
    x0 = y0 = 20
    ys, xs = np.mgrid[0:48, 0:48]
    phase = 2 * np.pi * (2 * (xs - x0 + border) / 32 + (ys - y0 + border) / 32)
    signal = 128.0 + 50.0 * np.cos(phase)
    luma = np.repeat(np.floor(signal + 0.5)[np.newaxis], 3, axis=0).astype(np.uint8)
    block = LossBlock(1, x0, y0, size)
    volume = assembleVolume(luma, LossMask(48, 48, 3, [block]), block,
                            nP=1, nF=1, border=border)
    assert volume.M == edge
    model = extrapolating.fseGenerateModel(volume, FseConfig(fftDims=(32, 32, 4),
                                                             iterations=200))
    truth = signal[y0:y0 + size, x0:x0 + size]
    rect = volume.blockRect
    estimate = model.g[1, rect.n0:rect.n0 + size, rect.m0:rect.m0 + size]
    rms = np.sqrt(np.mean((estimate - truth) ** 2))
    assert rms < 0.01 * np.sqrt(np.mean(truth ** 2))
    """Done Test"""


def test_cut_patch():
    """
    Test cutPatch rounding and clamping
    """
    volume = constantVolume()
    g = np.full(volume.samples.shape, 128.0)
    assert np.all(extrapolating.cutPatch(g, volume) == 128)
    assert extrapolating.cutPatch(g, volume).shape == (16, 16)
    assert extrapolating.cutPatch(g, volume).dtype == np.uint8
    g[2, 16, 16] = -3.2
    g[2, 16, 17] = 254.6
    g[2, 16, 18] = 2.5
    g[2, 16, 19] = 300.0
    g[2, 16, 20] = 2.49
    patch = extrapolating.cutPatch(g, volume)
    assert patch[0, :5].tolist() == [0, 255, 3, 255, 2]
    """Done Test"""


def test_model_synthesize_and_dump(tmp_path):
    """
    Test FseModel.synthesize and dumpModel
    """
    volume = randomVolume(1)
    config = FseConfig(fftDims=(8, 8, 4), iterations=12)
    model = extrapolating.fseGenerateModel(volume, config)
    assert isinstance(model, FseModel)
    samples, residue = model.synthesize()
    assert np.allclose(samples, model.g, atol=1e-9)
    assert residue < 1e-9

    path = tmp_path / "model.csv"
    extrapolating.dumpModel(model, str(path))
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["iteration", "index", "kp", "kn", "km", "coef_real",
                       "coef_imag", "energy"]
    assert len(rows) == 1 + 1 + 12
    assert rows[1][0] == "0" and float(rows[1][-1]) == model.trace[0]
    assert int(rows[2][1]) == model.chosen[0].index
    assert float(rows[-1][-1]) == model.trace[-1]

    with pytest.raises(ExtrapolationError):
        empty = randomVolume(2)
        empty.labels[...] = LabelDex.unavailable
        extrapolating.fseGenerateModel(empty, config)
    """Done Test"""


if __name__ == "__main__":
    test_constant_convergence()
    test_fast_matches_reference()
