# -*- coding: utf-8 -*-
"""
mcfse.mcfsing module

Generic Constants and Classes
Exception Classes

"""
from collections import namedtuple

Versionage = namedtuple("Versionage", "major minor")

Version = Versionage(major=1, minor=0)  # report format version

PEAK = 255  # peak sample value of 8 bit luma


class Mixin():
    """
    Base class to enable consistent MRO for mixin multiple inheritance
    Allows each subclass to call
    super(MixinSubClass, self).__init__(*pa, **kwa)
    So the __init__ propagates to common top of Tree
    """
    def __init__(self, *pa, **kwa):
        pass


class McfseError(Exception):
    """
    Base Class for mcfse exceptions

    To use   raise McfseError("Error: message")
    """


class ValidationError(McfseError):
    """
    Validation related errors
    Usage:
        raise ValidationError("error message")
    """


class ConfigError(ValidationError):
    """
    Bad or inconsistent configuration value

    Usage:
        raise ConfigError("error message")
    """


class VideoError(McfseError):
    """
    Error reading or writing raw video

    Usage:
        raise VideoError("error message")
    """


class ParseError(VideoError):
    """
    Malformed video stream. .offset is the byte offset of the fault.

    Usage:
        raise ParseError("error message", offset=12)
    """
    def __init__(self, msg, offset=0):
        super(ParseError, self).__init__(f"{msg} at byte offset {offset}.")
        self.offset = offset


class MagicError(ParseError):
    """
    Stream does not start with the YUV4MPEG2 magic

    Usage:
        raise MagicError("error message", offset=0)
    """


class HeaderError(ParseError):
    """
    Stream header missing, truncated or with unsupported parameters

    Usage:
        raise HeaderError("error message", offset=10)
    """


class FrameMarkerError(ParseError):
    """
    Frame does not start with FRAME marker where the declared frame size
    says the next frame must begin

    Usage:
        raise FrameMarkerError("error message", offset=1024)
    """


class TruncationError(ParseError):
    """
    Final frame payload shorter than declared frame size

    Usage:
        raise TruncationError("error message", offset=1024)
    """


class FrameCountError(VideoError):
    """
    Headerless file size is not an integral number of frames.
    .remainder is the number of leftover bytes.

    Usage:
        raise FrameCountError("error message", remainder=1)
    """
    def __init__(self, msg, remainder=0):
        super(FrameCountError, self).__init__(msg)
        self.remainder = remainder


class LossError(McfseError):
    """
    Invalid loss pattern or mask

    Usage:
        raise LossError("error message")
    """


class MotionError(McfseError):
    """
    Motion estimation has no feasible candidate

    Usage:
        raise MotionError("error message")
    """


class InfeasibleError(MotionError):
    """
    Single candidate vector leaves the reference frame or hits unavailable
    reference samples

    Usage:
        raise InfeasibleError("error message")
    """


class VolumeError(McfseError):
    """
    Extrapolation volume can not be assembled

    Usage:
        raise VolumeError("error message")
    """


class ExtrapolationError(McfseError):
    """
    Model generation failure

    Usage:
        raise ExtrapolationError("error message")
    """


class BaselineError(McfseError):
    """
    Baseline concealment not applicable

    Usage:
        raise BaselineError("error message")
    """


class OglerError(McfseError):
    """
    Error using or configuring Ogler

    Usage:
        raise OglerError("error message")
    """


class FilerError(McfseError):
    """
    Error using or configuring Filer

    Usage:
        raise FilerError("error message")
    """
