# -*- encoding: utf-8 -*-
"""
mcfse.app.harnessing module

Experiment runner: injects block losses into input sequences, conceals them
with every requested algorithm, measures PSNR over the lost pixels and emits
concealed sequences and reports.

Every (algorithm, sequence) cell is a ConcealerDoer and all cells of a run
interleave under one Doist, one block per cell per cycle.
"""
import math
import os
from collections import namedtuple

import numpy as np
from ordered_set import OrderedSet as oset

from .. import help
from ..mcfsing import PEAK, Version, ConfigError, ValidationError, VideoError
from ..help.kvicting import Kvict
from ..base.doing import Doist
from ..base.filing import Filer
from ..core.videoing import planesOf, loadY4m, loadRawYuv, writeY4m, writePgm
from ..core.lossing import (availability, buildIsolatedPattern, applyLoss,
                            loadPattern, dumpPattern)
from ..core.extrapolating import FseConfig
from ..core.concealing import AlgDex, ConcealConfig, Concealer, ConcealerDoer
from . import synthing, reporting

logger = help.ogler.getLogger()


DEFAULT_FRAMES = (16, 46, 76, 106, 136)  # 0-based, 1-based 17, 47, 77, 107, 137
DEFAULT_SWEEP = ((1, 0), (2, 0), (1, 1), (2, 2))
MODEL_ALGORITHMS = (AlgDex.fse3d, AlgDex.mcfse)


def psnrOf(original, concealed):
    """
    Returns PSNR in dB between two equally shaped sample arrays,
    math.inf when they are identical
    """
    original = np.asarray(original, dtype=np.int64)
    concealed = np.asarray(concealed, dtype=np.int64)
    if original.shape != concealed.shape:
        raise ValidationError(f"Shape {original.shape} does not match {concealed.shape}.")
    if original.size == 0:
        raise ValidationError("PSNR of no samples.")
    mse = np.mean((original - concealed) ** 2)
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def psnrLostPixels(original, concealed, mask):
    """
    Returns PSNR in dB with the squared error pooled over all lost pixels of
    mask across all frames, math.inf for zero error.

    Parameters:
        original (Sequence | np.ndarray): reference luma
        concealed (Sequence | np.ndarray): concealed luma
        mask (LossMask | np.ndarray): availability
    """
    original, concealed = planesOf(original), planesOf(concealed)
    lost = ~availability(mask)
    if original.shape != concealed.shape or original.shape != lost.shape:
        raise ValidationError(f"Shapes {original.shape}, {concealed.shape} and"
                              f" {lost.shape} differ.")
    if not lost.any():
        raise ValidationError("Mask has no lost pixels.")
    return psnrOf(original[lost], concealed[lost])


BlockPsnr = namedtuple("BlockPsnr", "frame x0 y0 size psnr ok fallback reliable")

Cell = namedtuple("Cell", "algorithm sequence psnr blocks failures fallbacks "
                          "unreliable seconds blockPsnrs")


class ExperimentReport:
    """
    ExperimentReport collects the results of one run.

    Attributes:
        cells (dict): Cell keyed by (algorithm, sequence)
        traces (dict): {iteration: psnr} keyed by (sequence, algorithm)
        sweeps (dict): psnr keyed by (sequence, nP, nF, algorithm)
        sequences (list[str]): sequence labels in input order
        algorithms (list[str]): algorithms in requested order
        skipped (list[str]): inputs that could not be read
        config (dict): effective configuration
    """

    def __init__(self, config=None):
        self.cells = {}
        self.traces = {}
        self.sweeps = {}
        self.sequences = []
        self.algorithms = []
        self.skipped = []
        self.config = dict(config) if config else {}


    def add(self, cell):
        """
        Add Cell, registering its algorithm and sequence labels
        """
        if cell.sequence not in self.sequences:
            self.sequences.append(cell.sequence)
        if cell.algorithm not in self.algorithms:
            self.algorithms.append(cell.algorithm)
        self.cells[(cell.algorithm, cell.sequence)] = cell


    def psnr(self, algorithm, sequence):
        """
        Returns pooled PSNR of cell or None when cell was not run
        """
        cell = self.cells.get((algorithm, sequence))
        return cell.psnr if cell is not None else None


    def rows(self):
        """
        Returns cells ordered by algorithm then sequence
        """
        return [self.cells[(a, s)] for a in self.algorithms for s in self.sequences
                if (a, s) in self.cells]


    def asDict(self):
        """
        Returns report as plain serializable dict. Infinite PSNR is given as
        None with the infinite flag set.
        """
        def finite(value):
            return None if math.isinf(value) else value

        cells = []
        for cell in self.rows():
            cells.append(dict(algorithm=cell.algorithm, sequence=cell.sequence,
                              psnr=finite(cell.psnr), infinite=math.isinf(cell.psnr),
                              blocks=cell.blocks, failures=cell.failures,
                              fallbacks=cell.fallbacks, unreliable=cell.unreliable,
                              seconds=cell.seconds,
                              perBlock=[dict(frame=b.frame, x0=b.x0, y0=b.y0,
                                             size=b.size, psnr=finite(b.psnr),
                                             ok=b.ok) for b in cell.blockPsnrs]))
        traces = [dict(sequence=s, algorithm=a,
                       points=[[i, finite(p)] for i, p in sorted(points.items())])
                  for (s, a), points in self.traces.items()]
        sweeps = [dict(sequence=s, np=p, nf=f, algorithm=a, psnr=finite(v),
                       infinite=math.isinf(v))
                  for (s, p, f, a), v in self.sweeps.items()]
        return dict(version=f"{Version.major}.{Version.minor}",
                    pooling="mse over all lost pixels",
                    sequences=list(self.sequences), algorithms=list(self.algorithms),
                    skipped=list(self.skipped), config=dict(self.config),
                    cells=cells, traces=traces, sweeps=sweeps)


def configure(source=None, overrides=None):
    """
    Returns Kvict experiment configuration.

    Parameters:
        source (str | Kvict | dict | None): key-value text file path, or
            .json, .mgpk or .cbor file path, or ready made mapping
        overrides (dict | None): values replacing those of source, lists give
            repeated values
    """
    if source is None:
        kvict = Kvict()
    elif isinstance(source, Kvict):
        kvict = Kvict(source)
    elif isinstance(source, dict):
        kvict = _fromMapping(source)
    elif os.path.splitext(source)[1] in (".json", ".mgpk", ".cbor"):
        kvict = _fromMapping(help.load(source))
    else:
        kvict = Kvict.fromPath(source)

    for key, val in (overrides or {}).items():
        if val is None:
            continue
        key = key.lower().replace("-", "_")
        kvict.popall(key, None)
        for item in (val if isinstance(val, (list, tuple)) else [val]):
            kvict.add(key, str(item))
    return kvict


def _fromMapping(data):
    if not isinstance(data, dict):
        raise ConfigError(f"Config must be a mapping got {type(data).__name__}.")
    kvict = Kvict()
    for key, val in data.items():
        key = str(key).lower().replace("-", "_")
        for item in (val if isinstance(val, (list, tuple)) else [val]):
            kvict.add(key, str(item).lower() if isinstance(item, bool) else str(item))
    return kvict


def makeConcealConfig(kvict, algorithm=AlgDex.mcfse):
    """
    Returns ConcealConfig for algorithm from configuration kvict
    """
    fse = FseConfig(fftDims=kvict.nabTriple("fft", (64, 64, 16)),
                    gamma=kvict.nabFloat("gamma", 0.6),
                    rho=kvict.nabFloat("rho", 0.8),
                    iterations=kvict.nabInt("iterations", 100))
    return ConcealConfig(algorithm=algorithm,
                         nP=kvict.nabInt("np", 2),
                         nF=kvict.nabInt("nf", 2),
                         border=kvict.nabInt("border", 16),
                         bandWidth=kvict.nabInt("band", 4),
                         dMax=kvict.nabInt("dmax", 16),
                         tAbs=kvict.nabFloat("tabs", 100.0),
                         tRel=kvict.nabFloat("trel", 3.0),
                         ebmaWidth=kvict.nabInt("ebma_width", 1),
                         fse=fse)


def algorithmsOf(kvict):
    """
    Returns requested algorithm names, deduplicated in order
    """
    names = oset(name.upper() for name in kvict.nabList("algorithms", list(AlgDex)))
    for name in names:
        if name not in AlgDex:
            raise ConfigError(f"Unknown algorithm {name!r}.")
    return list(names)


def sweepOf(kvict):
    """
    Returns list of (nP, nF) pairs of the frame count sweep, empty when off
    """
    items = kvict.nabList("sweep")
    if not items:
        return []
    if len(items) == 1 and items[0].lower() in Kvict.Trues:
        return list(DEFAULT_SWEEP)
    pairs = []
    for item in items:
        try:
            nP, nF = (int(part) for part in item.split(":"))
        except ValueError as ex:
            raise ConfigError(f"Invalid sweep pair {item!r}, expected 'np:nf'.") from ex
        pairs.append((nP, nF))
    return pairs


def loadSource(name, kvict):
    """
    Returns (label, Sequence) for one configured sequence name, either a
    synthetic kind, a .y4m file or a headerless planar YUV file
    """
    if name.startswith(synthing.SYNTH_PREFIX):
        motion = tuple(int(v) for v in kvict.nabList("synth_motion", ["8", "0"]))
        if len(motion) != 2:
            raise ConfigError(f"Invalid synth_motion {motion}.")
        seq = synthing.makeSynthetic(name,
                                     width=kvict.nabInt("synth_width", 176),
                                     height=kvict.nabInt("synth_height", 144),
                                     frames=kvict.nabInt("synth_frames", 30),
                                     motion=motion,
                                     seed=kvict.nabInt("synth_seed", 0))
        return name[len(synthing.SYNTH_PREFIX):], seq

    label = os.path.splitext(os.path.basename(name))[0]
    if name.lower().endswith(".y4m"):
        return label, loadY4m(name)
    width, height = kvict.nabInt("width"), kvict.nabInt("height")
    if not width or not height:
        raise ConfigError(f"Headerless input {name} needs width and height.")
    return label, loadRawYuv(name, width, height, kvict.nab("chroma", "420"))


def makeMask(kvict, seq):
    """
    Returns LossMask for seq from the pattern file or the isolated grid keys.
    Grid frames are converted from frame_base and frames past the end of the
    sequence are dropped.
    """
    if kvict.nab("pattern"):
        return loadPattern(kvict.nab("pattern"), seq.width, seq.height, seq.frameCount)

    base = kvict.nabInt("frame_base", 0)
    frames = [int(f) - base for f in kvict.nabList("frames", [str(f + base)
                                                              for f in DEFAULT_FRAMES])]
    kept = [f for f in frames if 0 <= f < seq.frameCount]
    if len(kept) < len(frames):
        logger.warning("Dropped loss frames %s outside %d frames.",
                       sorted(set(frames) - set(kept)), seq.frameCount)
    return buildIsolatedPattern(kept,
                                blockSize=kvict.nabInt("block", 16),
                                strideX=kvict.nabInt("stride_x", 64),
                                strideY=kvict.nabInt("stride_y", 64),
                                offset=kvict.nabInt("offset", 16),
                                width=seq.width, height=seq.height,
                                frameCount=seq.frameCount)


def checkpointsOf(kvict):
    """
    Returns iteration checkpoints of the trace or None when trace is off
    """
    if not kvict.nabBool("trace", False):
        return None
    step = kvict.nabInt("trace_step", 1)
    if step <= 0:
        raise ConfigError(f"Invalid trace_step {step}.")
    iterations = kvict.nabInt("iterations", 100)
    marks = list(range(0, iterations + 1, step))
    if marks[-1] != iterations:
        marks.append(iterations)
    return marks


def tracePsnr(original, concealer):
    """
    Returns {iteration: psnr} pooled over all lost pixels using the patches
    kept at each checkpoint. Blocks without a patch at a checkpoint count with
    their final concealed samples.
    """
    luma = planesOf(original)
    marks = sorted({i for o in concealer.outcomes for i in o.patches})
    count = sum(o.block.size ** 2 for o in concealer.outcomes)
    trace = {}
    for mark in marks:
        sse = 0
        for outcome in concealer.outcomes:
            b = outcome.block
            truth = luma[b.frame, b.y0:b.y0 + b.size, b.x0:b.x0 + b.size].astype(np.int64)
            patch = outcome.patches.get(mark)
            if patch is None:
                patch = concealer.luma[b.frame, b.y0:b.y0 + b.size, b.x0:b.x0 + b.size]
            sse += int(np.sum((truth - patch.astype(np.int64)) ** 2))
        mse = sse / count if count else 0.0
        trace[mark] = math.inf if mse == 0 else 10.0 * math.log10(PEAK * PEAK / mse)
    return trace


def _cell(label, original, mask, doer):
    concealer = doer.concealer
    concealed = concealer.result()
    luma = planesOf(original)
    blocks = []
    for outcome in concealer.outcomes:
        b = outcome.block
        rows, cols = slice(b.y0, b.y0 + b.size), slice(b.x0, b.x0 + b.size)
        blocks.append(BlockPsnr(b.frame, b.x0, b.y0, b.size,
                                psnrOf(luma[b.frame, rows, cols],
                                       concealer.luma[b.frame, rows, cols]),
                                outcome.ok, outcome.fallback, outcome.reliable))
    return Cell(algorithm=concealer.config.algorithm, sequence=label,
                psnr=psnrLostPixels(original, concealed, mask),
                blocks=len(mask.blocks),
                failures=concealer.failures + len(concealer.queue),
                fallbacks=sum(1 for o in concealer.outcomes if o.fallback),
                unreliable=sum(1 for o in concealer.outcomes if o.reliable is False),
                seconds=doer.seconds, blockPsnrs=blocks)


def runCells(cells, limit=None):
    """
    Runs ConcealerDoer cells interleaved under one Doist. Returns the Doist.
    """
    doist = Doist(limit=limit, doers=cells)
    doist.do()
    return doist


def runExperiment(source=None, overrides=None, filer=None):
    """
    Returns ExperimentReport of the experiment configured by source and
    overrides. Artifacts and reports are written into the directory of filer,
    by default the configured output directory.
    """
    kvict = configure(source, overrides)
    algorithms = algorithmsOf(kvict)
    checkpoints = checkpointsOf(kvict)
    sweep = sweepOf(kvict)
    limit = kvict.nabFloat("limit")
    pgm = kvict.nabBool("pgm", False)
    names = kvict.naball("sequence", [])
    if not names:
        raise ConfigError("No sequence configured.")
    for algorithm in algorithms:
        makeConcealConfig(kvict, algorithm)  # validate before any work

    if filer is None:
        filer = Filer(name="", headDirPath=kvict.nab("output", "mcfse_out"),
                      direct=True)
    report = ExperimentReport(config=kvict.lasts())

    sources = []
    for name in names:
        try:
            label, seq = loadSource(name, kvict)
        except (OSError, VideoError) as ex:
            logger.warning("Skipping unreadable sequence %s: %s", name, ex)
            report.skipped.append(name)
            continue
        mask = makeMask(kvict, seq)
        if not mask.blocks:
            logger.warning("Skipping sequence %s without lost blocks.", name)
            report.skipped.append(name)
            continue
        corrupted = applyLoss(seq, mask)
        sources.append((label, seq, mask))
        writeY4m(corrupted, filer.pathOf(f"{label}_corrupted.y4m"))
        dumpPattern(mask, filer.pathOf(f"{label}_pattern.txt"))
        if pgm:
            t = mask.blocks[0].frame
            writePgm(seq.frame(t), filer.pathOf(f"{label}_original_f{t}.pgm"))
            writePgm(corrupted.frame(t), filer.pathOf(f"{label}_corrupted_f{t}.pgm"))

    cells = []
    for label, seq, mask in sources:
        for algorithm in algorithms:
            marks = checkpoints if algorithm in MODEL_ALGORITHMS else None
            concealer = Concealer(applyLoss(seq, mask), mask,
                                  makeConcealConfig(kvict, algorithm), checkpoints=marks)
            cells.append((label, seq, mask, ConcealerDoer(concealer, name=f"{label}/{algorithm}")))
    runCells([doer for *_, doer in cells], limit=limit)

    for label, seq, mask, doer in cells:
        cell = _cell(label, seq, mask, doer)
        report.add(cell)
        concealed = doer.concealer.result()
        writeY4m(concealed, filer.pathOf(f"{label}_{cell.algorithm}.y4m"))
        if pgm:
            t = mask.blocks[0].frame
            writePgm(concealed.frame(t), filer.pathOf(f"{label}_{cell.algorithm}_f{t}.pgm"))
        if doer.concealer.checkpoints is not None:
            report.traces[(label, cell.algorithm)] = tracePsnr(seq, doer.concealer)
        logger.info("%s %s PSNR %.2f dB over %d blocks.", label, cell.algorithm,
                    cell.psnr, cell.blocks)

    if sweep:
        swept = [a for a in algorithms if a in MODEL_ALGORITHMS] or list(MODEL_ALGORITHMS)
        runs = []
        for label, seq, mask in sources:
            for nP, nF in sweep:
                for algorithm in swept:
                    config = makeConcealConfig(kvict, algorithm).replace(nP=nP, nF=nF)
                    doer = ConcealerDoer(Concealer(applyLoss(seq, mask), mask, config),
                                         name=f"{label}/{algorithm}/{nP}:{nF}")
                    runs.append((label, seq, mask, nP, nF, algorithm, doer))
        runCells([run[-1] for run in runs], limit=limit)
        for label, seq, mask, nP, nF, algorithm, doer in runs:
            report.sweeps[(label, nP, nF, algorithm)] = psnrLostPixels(
                seq, doer.concealer.result(), mask)

    reporting.writeReports(report, filer,
                           formats=kvict.nabList("formats", ["json"]))
    return report
