# -*- encoding: utf-8 -*-
"""
mcfse.app.reporting module

Report emission: Markdown comparison table, CSV tables and a serialized dump
of the whole report. All files are written atomically.
"""
import csv
import io
import math

from .. import help
from ..help.helping import dump, writeAtomic

logger = help.ogler.getLogger()


# published PSNR in dB on Foreman CIF for comparison, not a test oracle
ForemanReference = {"TR": 27.60, "EBMA": 30.10, "DMVE": 33.04,
                    "FSE3D": 34.37, "MCFSE": 35.53}

POOLING_NOTE = ("PSNR in dB with squared error pooled over all lost pixels; "
                "inf marks exact reconstruction.")


def formatPsnr(psnr):
    """
    Returns PSNR text, 'inf' for exact reconstruction and '-' when missing
    """
    if psnr is None:
        return "-"
    if math.isinf(psnr):
        return "inf"
    return f"{psnr:.2f}"


def _csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def hasForeman(report):
    return any(label.lower().startswith("foreman") for label in report.sequences)


def orderingVerdicts(report):
    """
    Returns list of (sequence, holds) for every Foreman sequence on which all
    algorithms of ForemanReference ran. holds is True when their PSNR rises
    strictly in the published order.
    """
    order = sorted(ForemanReference, key=ForemanReference.get)
    verdicts = []
    for sequence in report.sequences:
        if not sequence.lower().startswith("foreman"):
            continue
        psnrs = [report.psnr(algorithm, sequence) for algorithm in order]
        if None in psnrs:
            continue
        verdicts.append((sequence, all(a < b for a, b in zip(psnrs, psnrs[1:]))))
    return verdicts


def markdownTable(report):
    """
    Returns Markdown table with one row per algorithm and one column per
    sequence. Published Foreman values are added when Foreman was run.
    """
    header = ["Algorithm"] + list(report.sequences)
    reference = hasForeman(report)
    if reference:
        header.append("Foreman (published)")
    lines = ["# Comparison of concealment algorithms", "", POOLING_NOTE, "",
             "| " + " | ".join(header) + " |",
             "|" + "|".join(["---"] + ["---:"] * (len(header) - 1)) + "|"]
    for algorithm in report.algorithms:
        row = [algorithm] + [formatPsnr(report.psnr(algorithm, s)) for s in report.sequences]
        if reference:
            row.append(formatPsnr(ForemanReference.get(algorithm)))
        lines.append("| " + " | ".join(row) + " |")
    order = " < ".join(sorted(ForemanReference, key=ForemanReference.get))
    for sequence, holds in orderingVerdicts(report):
        lines.extend(["", f"Ordering {order} on {sequence}: {'holds' if holds else 'violated'}"])
    if report.skipped:
        lines.extend(["", "Skipped: " + ", ".join(report.skipped)])
    return "\n".join(lines) + "\n"


def reportCsv(report):
    """
    Returns long form CSV with one row per (algorithm, sequence) cell
    """
    rows = [[c.algorithm, c.sequence, formatPsnr(c.psnr), int(math.isinf(c.psnr)),
             c.blocks, c.failures, c.fallbacks, c.unreliable, f"{c.seconds:.6f}"]
            for c in report.rows()]
    return _csv(["algorithm", "sequence", "psnr", "infinite", "blocks", "failures",
                 "fallbacks", "unreliable", "seconds"], rows)


def blocksCsv(report):
    """
    Returns CSV with one row per concealed block of every cell
    """
    rows = [[c.algorithm, c.sequence, b.frame, b.x0, b.y0, b.size, formatPsnr(b.psnr),
             int(b.ok), b.fallback or "", "" if b.reliable is None else int(b.reliable)]
            for c in report.rows() for b in c.blockPsnrs]
    return _csv(["algorithm", "sequence", "frame", "x0", "y0", "size", "psnr", "ok",
                 "fallback", "reliable"], rows)


def sweepCsv(report):
    """
    Returns CSV of the frame count study, one row per (sequence, nP, nF) with
    one column per model algorithm
    """
    algorithms = []
    pairs = []
    for (sequence, nP, nF, algorithm) in report.sweeps:
        if algorithm not in algorithms:
            algorithms.append(algorithm)
        if (sequence, nP, nF) not in pairs:
            pairs.append((sequence, nP, nF))
    rows = [[s, p, f] + [formatPsnr(report.sweeps.get((s, p, f, a))) for a in algorithms]
            for s, p, f in pairs]
    return _csv(["sequence", "np", "nf"] + algorithms, rows)


def traceCsv(report):
    """
    Returns CSV of PSNR over iterations, one row per iteration and one column
    per sequence/algorithm
    """
    keys = list(report.traces)
    iterations = sorted({i for points in report.traces.values() for i in points})
    rows = [[i] + [formatPsnr(report.traces[k].get(i)) for k in keys] for i in iterations]
    return _csv(["iteration"] + [f"{s}/{a}" for s, a in keys], rows)


def writeReports(report, filer, formats=("json", )):
    """
    Atomically write all reports of report into the directory of filer.
    Returns dict of written paths keyed by report name.

    Parameters:
        report (ExperimentReport): results
        filer (Filer): opened output directory
        formats (iterable[str]): dump formats among json, mgpk and cbor
    """
    paths = {}
    paths["table"] = filer.write("report.md", markdownTable(report))
    paths["report"] = filer.write("report.csv", reportCsv(report))
    paths["blocks"] = filer.write("blocks.csv", blocksCsv(report))
    if report.sweeps:
        paths["sweep"] = filer.write("sweep.csv", sweepCsv(report))
    if report.traces:
        paths["trace"] = filer.write("trace.csv", traceCsv(report))
    for fmt in formats:
        fmt = fmt.lower().lstrip(".")
        path = filer.pathOf(f"report.{fmt}")
        dump(report.asDict(), path)
        paths[fmt] = path
    logger.info("Wrote reports to %s.", filer.path)
    return paths
