#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
mcfse command line

Module that contains the command line app.

Why does this file exist, and why not put this in __main__?

  You might be tempted to import things from __main__ later, but that will cause
  problems: the code will get executed twice:

  - When you run `python -m mcfse` python will execute
    ``__main__.py`` as a script. That means there won't be any
    ``mcfse.__main__`` in ``sys.modules``.
  - When you import __main__ it will get executed again (as a module) because
    there's no ``mcfse.__main__`` in ``sys.modules``.

Subcommands:

  mcfse run CONFIG [overrides]         run an experiment from a config file
  mcfse conceal INPUT --output OUT     conceal lost blocks of one sequence
  mcfse pattern --width W --height H   write an isolated loss pattern file
"""
import argparse
import logging
import sys

from . import __version__
from . import help
from .mcfsing import McfseError
from .core.videoing import writeY4m
from .core.lossing import dumpPattern
from .core.concealing import AlgDex, Concealer
from .app import harnessing, reporting

logger = help.ogler.getLogger()


def _common():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--loglevel', default='critical',
                        choices=['debug', 'info', 'warning', 'error', 'critical'],
                        help="Logging level, default critical.")
    return common


def _conceal(parser):
    group = parser.add_argument_group('concealment')
    group.add_argument('--np', type=int, help="Previous frames, default 2.")
    group.add_argument('--nf', type=int, help="Following frames, default 2.")
    group.add_argument('--border', type=int, help="Volume border, default 16.")
    group.add_argument('--band', type=int, help="Decision area width, default 4.")
    group.add_argument('--dmax', type=int, help="Search range, default 16.")
    group.add_argument('--tabs', type=float, help="Absolute threshold, default 100.")
    group.add_argument('--trel', type=float, help="Relative threshold, default 3.")
    group.add_argument('--fft', help="FFT size MxNxP, default 64x64x16.")
    group.add_argument('--rho', type=float, help="Weight decay, default 0.8.")
    group.add_argument('--gamma', type=float, help="Coefficient damping, default 0.6.")
    group.add_argument('--iterations', type=int, help="Iterations, default 100.")
    group.add_argument('--ebma-width', type=int, help="EBMA boundary, default 1.")


def _grid(parser):
    group = parser.add_argument_group('loss pattern')
    group.add_argument('--pattern', help="Pattern file of 'frame x0 y0 size' lines.")
    group.add_argument('--frames', help="Comma separated loss frames.")
    group.add_argument('--frame-base', type=int, help="Index of first frame, 0 or 1.")
    group.add_argument('--block', type=int, help="Block size, default 16.")
    group.add_argument('--stride-x', type=int, help="Horizontal stride, default 64.")
    group.add_argument('--stride-y', type=int, help="Vertical stride, default 64.")
    group.add_argument('--offset', type=int, help="Grid offset, default 16.")


def _input(parser):
    group = parser.add_argument_group('headerless input')
    group.add_argument('--width', type=int, help="Frame width of raw input.")
    group.add_argument('--height', type=int, help="Frame height of raw input.")
    group.add_argument('--chroma', choices=['420', 'mono'], help="Raw chroma layout.")


common = _common()
parser = argparse.ArgumentParser(prog='mcfse',
                                 description="Motion compensated frequency selective"
                                             " extrapolation for video block loss"
                                             " concealment.")
parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
subparsers = parser.add_subparsers(dest='command', required=True)

runner = subparsers.add_parser('run', parents=[common],
                               help="Run an experiment from a config file.")
runner.add_argument('config', help="Key-value, .json, .mgpk or .cbor config file.")
runner.add_argument('--sequence', action='append',
                    help="Input sequence, repeat for several, replaces config.")
runner.add_argument('--algorithms', help="Comma separated algorithms.")
runner.add_argument('--output', help="Output directory.")
runner.add_argument('--trace', action='store_true', default=None,
                    help="Emit PSNR over iterations.")
runner.add_argument('--trace-step', type=int, help="Trace iteration step.")
runner.add_argument('--sweep', help="Frame count pairs such as '1:0,2:2'.")
runner.add_argument('--pgm', action='store_true', default=None,
                    help="Dump first lost frame as PGM.")
runner.add_argument('--limit', type=float, help="Scheduler cycle limit.")
runner.add_argument('--formats', help="Report dump formats, json, mgpk, cbor.")
_input(runner)
_grid(runner)
_conceal(runner)

concealer = subparsers.add_parser('conceal', parents=[common],
                                  help="Conceal the lost blocks of one sequence.")
concealer.add_argument('input', help="Y4M or headerless YUV input.")
concealer.add_argument('--output', required=True, help="Concealed Y4M output.")
concealer.add_argument('--algorithm', default=AlgDex.mcfse,
                       choices=list(AlgDex), help="Algorithm, default MCFSE.")
_input(concealer)
_grid(concealer)
_conceal(concealer)

patterner = subparsers.add_parser('pattern', parents=[common],
                                  help="Write an isolated loss pattern file.")
patterner.add_argument('--width', type=int, required=True, help="Frame width.")
patterner.add_argument('--height', type=int, required=True, help="Frame height.")
patterner.add_argument('--frame-count', type=int, required=True,
                       help="Number of frames in the sequence.")
patterner.add_argument('--output', required=True, help="Pattern file path.")
_grid(patterner)


Skips = ('command', 'loglevel', 'config', 'input', 'output', 'algorithm',
         'frame_count')


def overridesOf(args):
    """
    Returns dict of config keys given on the command line
    """
    return {key: val for key, val in vars(args).items()
            if val is not None and key not in Skips}


def run(args):
    overrides = overridesOf(args)
    if args.output:
        overrides['output'] = args.output
    report = harnessing.runExperiment(args.config, overrides=overrides)
    sys.stdout.write(reporting.markdownTable(report))
    return 0


def conceal(args):
    kvict = harnessing.configure(None, overridesOf(args))
    label, seq = harnessing.loadSource(args.input, kvict)
    mask = harnessing.makeMask(kvict, seq)
    config = harnessing.makeConcealConfig(kvict, args.algorithm)
    worker = Concealer(seq, mask, config)
    concealed = worker.run()
    writeY4m(concealed, args.output)
    logger.info("Concealed %d blocks of %s with %s, %d failures.",
                len(mask.blocks), label, args.algorithm, worker.failures)
    return 1 if worker.failures else 0


def pattern(args):
    kvict = harnessing.configure(None, overridesOf(args))
    seq = argparse.Namespace(width=args.width, height=args.height,
                             frameCount=args.frame_count)
    mask = harnessing.makeMask(kvict, seq)
    dumpPattern(mask, args.output)
    return 0


Commands = dict(run=run, conceal=conceal, pattern=pattern)


def main(args=None):
    args = parser.parse_args(args=args)
    level = getattr(logging, args.loglevel.upper())
    help.ogler.resetLevel(level=level, globally=True)
    try:
        return Commands[args.command](args)
    except (McfseError, OSError) as ex:
        logger.error("%s failed: %s", args.command, ex)
        sys.stderr.write(f"mcfse {args.command}: {ex}\n")
        return 2
