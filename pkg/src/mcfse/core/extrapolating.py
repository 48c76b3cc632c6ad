# -*- encoding: utf-8 -*-
"""
mcfse.core.extrapolating module

Frequency selective extrapolation. A real parametric model g over the
extrapolation volume is built by repeatedly picking the 3D DFT basis function
whose weighted projection removes most residual energy, adding a damped share
of it and updating the residual. The lost block is then cut out of g.

Basis functions live on the FFT grid of shape (P_fft, N_fft, M_fft) and are
evaluated at the volume positions [p, n, m] anchored at the grid origin:

    phi_k[p, n, m] = exp(2j*pi*(kp*p/P_fft + kn*n/N_fft + km*m/M_fft))

so numpy.fft.fftn of (r * w) zero padded to the grid yields every weighted
inner product <r*w, phi_k> at once.
"""
import csv
import io
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .. import help
from ..mcfsing import PEAK, ConfigError, ExtrapolationError, ValidationError
from ..help.helping import writeAtomic
from .voluming import LabelDex

logger = help.ogler.getLogger()


REFERENCE_LIMIT = 1 << 22  # max basis matrix entries of the spatial reference path
TRACE_TOLERANCE = 1e-9  # relative slack on the non increasing energy trace


Choice = namedtuple("Choice", "iteration index bin coefficient paired")


@dataclass(frozen=True)
class FseConfig:
    """
    FseConfig holds model generation parameters.

    Attributes:
        fftDims (tuple): (M_fft, N_fft, P_fft) grid size in x, y and t
        gamma (float): damping of each projection coefficient in (0, 1]
        rho (float): isotropic weight decay base in (0, 1)
        iterations (int): fixed number of iterations
    """
    fftDims: tuple = (64, 64, 16)
    gamma: float = 0.6
    rho: float = 0.8
    iterations: int = 100

    def __post_init__(self):
        dims = tuple(int(d) for d in self.fftDims)
        if len(dims) != 3 or min(dims) <= 0:
            raise ConfigError(f"Invalid FFT dimensions {self.fftDims}.")
        object.__setattr__(self, "fftDims", dims)
        if not 0.0 < self.gamma <= 1.0:
            raise ConfigError(f"Invalid gamma {self.gamma} not in (0, 1].")
        if not 0.0 < self.rho < 1.0:
            raise ConfigError(f"Invalid rho {self.rho} not in (0, 1).")
        if int(self.iterations) != self.iterations or self.iterations < 0:
            raise ConfigError(f"Invalid iteration count {self.iterations}.")

    @property
    def gridShape(self):
        """
        Returns FFT grid shape in array order (P_fft, N_fft, M_fft)
        """
        m, n, p = self.fftDims
        return (p, n, m)


class WeightField:
    """
    WeightField is the isotropic weight w over a volume, rho ** distance on
    SUPPORT samples and zero elsewhere.

    Attributes:
        w (np.ndarray): float64 [p, n, m]
        center (tuple): (p, n, m) position distances are measured from
        rho (float): decay base
    """

    def __init__(self, w, center, rho):
        self.w = w
        self.center = center
        self.rho = rho

    @property
    def total(self):
        return float(self.w.sum())


def makeWeight(volume, rho=0.8):
    """
    Returns WeightField for volume. Distances are measured from the middle of
    the lost block, that is the spatial center of the window on the plane of
    the block's own frame.
    """
    if not 0.0 < rho < 1.0:
        raise ValidationError(f"Invalid rho {rho} not in (0, 1).")
    P, N, M = volume.labels.shape
    center = (float(volume.centerPlane), (N - 1) / 2.0, (M - 1) / 2.0)
    p, n, m = np.meshgrid(np.arange(P) - center[0], np.arange(N) - center[1],
                          np.arange(M) - center[2], indexing="ij")
    w = np.power(rho, np.sqrt(p * p + n * n + m * m))
    w[volume.labels != LabelDex.support] = 0.0
    return WeightField(w, center, rho)


def mirror(spectrum):
    """
    Returns spectrum at negated frequencies, A[(-k) mod shape]
    """
    axes = tuple(range(spectrum.ndim))
    return np.roll(np.flip(spectrum, axis=axes), 1, axis=axes)


def mirrorBin(index, shape):
    """
    Returns frequency bin tuple of -index on grid shape
    """
    return tuple((-i) % s for i, s in zip(index, shape))


def basisOn(index, gridShape, volumeShape):
    """
    Returns complex basis function phi_index evaluated on volume positions
    """
    factors = [np.exp(2j * np.pi * k * np.arange(n) / s)
               for k, s, n in zip(index, gridShape, volumeShape)]
    return (factors[0][:, np.newaxis, np.newaxis] *
            factors[1][np.newaxis, :, np.newaxis] *
            factors[2][np.newaxis, np.newaxis, :])


def _weightOf(weight):
    return weight.w if isinstance(weight, WeightField) else np.asarray(weight, dtype=np.float64)


def projectReference(residual, weight, k, gridShape):
    """
    Returns weighted projection coefficient p_k of residual onto phi_k by
    direct summation over the volume,
        p_k = sum(r * w * conj(phi_k)) / sum(w * |phi_k|**2)

    Parameters:
        residual (np.ndarray): real [p, n, m] residual
        weight (WeightField | np.ndarray): weight over the volume
        k (tuple): frequency bin (kp, kn, km)
        gridShape (tuple): FFT grid (P_fft, N_fft, M_fft)
    """
    w = _weightOf(weight)
    residual = np.asarray(residual, dtype=np.float64)
    phi = basisOn(k, gridShape, residual.shape)
    norm = np.sum(w * np.abs(phi) ** 2)
    if norm <= 0.0:
        raise ExtrapolationError("Projection over volume without support.")
    return complex(np.sum(residual * w * np.conj(phi)) / norm)


def selectBasis(weightedResidualSpectrum, weightSpectrum=None):
    """
    Returns frequency bin (kp, kn, km) of greatest projection energy.

    The weighted basis energy equals sum(w) for every bin so the choice only
    depends on |R_k|. Scores are averaged with the mirror bin so both members
    of a conjugate pair tie exactly and the lowest linear index wins.

    Parameters:
        weightedResidualSpectrum (np.ndarray): R = fftn(r * w) on the grid
        weightSpectrum (np.ndarray | None): W = fftn(w), checked for support
    """
    if weightSpectrum is not None and weightSpectrum.flat[0].real <= 0.0:
        raise ExtrapolationError("Weight spectrum has no support energy.")
    energy = np.abs(weightedResidualSpectrum) ** 2
    score = (energy + mirror(energy)) / 2.0
    return np.unravel_index(int(np.argmax(score)), score.shape)


class FseState:
    """
    FseState is the iteration state of one model generation.

    The fast path keeps R = fftn(r * w) and updates it per iteration with a
    circularly shifted copy of W = fftn(w). The reference path recomputes every
    projection by direct summation over an explicit basis matrix and is meant
    for small volumes only.

    Attributes:
        samples (np.ndarray): volume samples, zero off support
        w (np.ndarray): weight [p, n, m]
        gridShape (tuple): FFT grid (P_fft, N_fft, M_fft)
        gamma (float): coefficient damping
        fast (bool): True means frequency domain path
        g (np.ndarray): real model over the volume
        spectrum (np.ndarray): accumulated model coefficients on the grid
        chosen (list[Choice]): one per iteration
        trace (list[float]): weighted residual energy, initial value first
    """

    def __init__(self, volume, weight, config, fast=True):
        self.samples = np.where(volume.support, volume.samples, 0.0)
        self.w = _weightOf(weight)
        self.gridShape = config.gridShape
        self.gamma = config.gamma
        self.fast = fast
        if any(v > g for v, g in zip(self.samples.shape, self.gridShape)):
            raise ConfigError(f"FFT grid {self.gridShape} smaller than volume"
                              f" {self.samples.shape}.")
        self.total = float(self.w.sum())
        if self.total <= 0.0:
            raise ExtrapolationError("Volume has no weighted support samples.")

        self.g = np.zeros(self.samples.shape, dtype=np.float64)
        self.spectrum = np.zeros(self.gridShape, dtype=np.complex128)
        self.chosen = []
        self.trace = [self.energy]

        if fast:
            self.W = np.fft.fftn(self.w, s=self.gridShape, axes=(0, 1, 2))
            self.R = np.fft.fftn(self.residual * self.w, s=self.gridShape, axes=(0, 1, 2))
        else:
            size = int(np.prod(self.gridShape)) * self.samples.size
            if size > REFERENCE_LIMIT:
                raise ExtrapolationError(f"Reference basis matrix of {size} entries"
                                         f" exceeds {REFERENCE_LIMIT}.")
            axes = [np.arange(s) for s in self.gridShape]
            kp, kn, km = (a.ravel() for a in np.meshgrid(*axes, indexing="ij"))
            pos = [np.arange(s) for s in self.samples.shape]
            p, n, m = (a.ravel() for a in np.meshgrid(*pos, indexing="ij"))
            P, N, M = self.gridShape
            phase = (np.outer(kp, p) / P + np.outer(kn, n) / N + np.outer(km, m) / M)
            self.basis = np.exp(2j * np.pi * phase)  # [bin, sample]


    @property
    def residual(self):
        """
        Returns residual r = v - g, meaningful on support only
        """
        return self.samples - self.g


    @property
    def energy(self):
        """
        Returns weighted residual energy sum(w * r**2)
        """
        return float(np.sum(self.w * self.residual ** 2))


    @property
    def iteration(self):
        return len(self.chosen)


    def _selectReference(self):
        """
        Returns (bin, projection) minimizing the literal weighted distance
        sum(w * |r - p_k * phi_k|**2), averaged over each conjugate pair
        """
        r = self.residual.ravel()
        w = self.w.ravel()
        projections = (self.basis.conj() @ (r * w)) / (np.abs(self.basis) ** 2 @ w)
        distances = (np.abs(r[np.newaxis, :] - projections[:, np.newaxis] * self.basis) ** 2) @ w
        distances = distances.reshape(self.gridShape)
        score = (distances + mirror(distances)) / 2.0
        index = np.unravel_index(int(np.argmin(score)), self.gridShape)
        return index, projections.reshape(self.gridShape)[index]


    def iterate(self):
        """
        Runs one iteration and returns its Choice
        """
        if self.fast:
            index = selectBasis(self.R, self.W)
            projection = self.R[index] / self.W.flat[0].real
        else:
            index, projection = self._selectReference()

        partner = mirrorBin(index, self.gridShape)
        paired = partner != tuple(index)
        index = tuple(int(i) for i in index)
        if paired:
            coefficient = complex(self.gamma * projection)
        else:  # self conjugate bin is a real basis function
            coefficient = complex(self.gamma * projection.real, 0.0)

        phi = basisOn(index, self.gridShape, self.g.shape)
        if paired:
            self.g += 2.0 * np.real(coefficient * phi)
            self.spectrum[index] += coefficient
            self.spectrum[partner] += coefficient.conjugate()
        else:
            self.g += coefficient.real * phi.real
            self.spectrum[index] += coefficient

        if self.fast:
            axes = (0, 1, 2)
            self.R -= coefficient * np.roll(self.W, index, axis=axes)
            if paired:
                self.R -= coefficient.conjugate() * np.roll(self.W, partner, axis=axes)

        choice = Choice(iteration=self.iteration + 1,
                        index=int(np.ravel_multi_index(index, self.gridShape)),
                        bin=index, coefficient=coefficient, paired=paired)
        self.chosen.append(choice)

        energy = self.energy
        if energy > self.trace[-1] + TRACE_TOLERANCE * (self.trace[0] + 1.0):
            raise ExtrapolationError(f"Residual energy rose from {self.trace[-1]}"
                                     f" to {energy} at iteration {choice.iteration}.")
        self.trace.append(energy)
        return choice


def fseIterate(state):
    """
    Runs one model generation iteration on state. Returns Choice.
    """
    return state.iterate()


class FseModel:
    """
    FseModel is a finished parametric model over an extrapolation volume.

    Attributes:
        g (np.ndarray): real model [p, n, m]
        chosen (list[Choice]): basis choice per iteration
        trace (list[float]): weighted residual energy, initial then one per
            iteration
        spectrum (np.ndarray): accumulated coefficients on the FFT grid
        patches (dict): block patch at each requested checkpoint iteration
    """

    def __init__(self, g, chosen, trace, spectrum, patches=None):
        self.g = g
        self.chosen = list(chosen)
        self.trace = list(trace)
        self.spectrum = spectrum
        self.patches = dict(patches) if patches else {}


    def synthesize(self):
        """
        Returns (samples, residue) where samples is the model evaluated from
        .spectrum on the FFT grid by inverse transform and cropped to the
        volume, and residue is the largest imaginary magnitude discarded.
        """
        grid = np.fft.ifftn(self.spectrum) * self.spectrum.size
        P, N, M = self.g.shape
        crop = grid[:P, :N, :M]
        return crop.real.copy(), float(np.max(np.abs(crop.imag), initial=0.0))


def _cut(g, volume):
    rect = volume.blockRect
    block = g[volume.centerPlane, rect.n0:rect.n0 + rect.size, rect.m0:rect.m0 + rect.size]
    return np.clip(np.floor(block + 0.5), 0, PEAK).astype(np.uint8)


def cutPatch(model, volume):
    """
    Returns uint8 block x block patch of the model on the lost area, rounded
    half up and clamped to [0, 255].
    """
    g = model.g if isinstance(model, FseModel) else np.asarray(model, dtype=np.float64)
    return _cut(g, volume)


def fseGenerateModel(volume, config=None, fast=True, checkpoints=None):
    """
    Returns FseModel for volume after config.iterations iterations starting
    from a zero model so the initial residual equals the support samples.

    Parameters:
        volume (ExtrapolationVolume): assembled volume
        config (FseConfig | None): parameters, defaults when None
        fast (bool): True means frequency domain path, False spatial reference
        checkpoints (iterable | None): iteration counts at which to keep the
            cut patch, 0 included means the empty model
    """
    config = config if config is not None else FseConfig()
    if not np.any(volume.support):
        raise ExtrapolationError(f"No support samples for {volume}.")
    weight = makeWeight(volume, config.rho)
    state = FseState(volume, weight, config, fast=fast)
    marks = set(int(c) for c in checkpoints) if checkpoints is not None else set()

    patches = {}
    if 0 in marks:
        patches[0] = _cut(state.g, volume)
    for _ in range(config.iterations):
        fseIterate(state)
        if state.iteration in marks:
            patches[state.iteration] = _cut(state.g, volume)

    logger.debug("Model for %s after %d iterations, energy %.6g.",
                 volume.block, state.iteration, state.trace[-1])
    return FseModel(state.g, state.chosen, state.trace, state.spectrum, patches)


def dumpModel(model, path):
    """
    Atomically write chosen basis functions and the residual energy trace of
    model as CSV to path. Row 0 carries the initial energy only.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["iteration", "index", "kp", "kn", "km",
                     "coef_real", "coef_imag", "energy"])
    writer.writerow([0, "", "", "", "", "", "", repr(model.trace[0])])
    for choice, energy in zip(model.chosen, model.trace[1:]):
        kp, kn, km = choice.bin
        writer.writerow([choice.iteration, choice.index, kp, kn, km,
                         repr(choice.coefficient.real), repr(choice.coefficient.imag),
                         repr(energy)])
    writeAtomic(path, buf.getvalue())
