# -*- encoding: utf-8 -*-
"""
mcfse.core package

Video concealment primitives: raw video io, loss patterns, motion estimation,
volume assembly, frequency selective extrapolation, baselines and the
sequential concealment engine.
"""
