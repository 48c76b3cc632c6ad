# -*- encoding: utf-8 -*-
"""
mcfse package

Motion compensated frequency selective extrapolation for concealing lost
blocks in video sequences.
"""

__version__ = '0.1.0'  # also change in setup.py

from .mcfsing import (Mixin, McfseError, ValidationError, ConfigError,
                      VideoError, LossError, MotionError, VolumeError,
                      ExtrapolationError, BaselineError)
