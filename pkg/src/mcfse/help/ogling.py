# -*- encoding: utf-8 -*-
"""
mcfse.help.ogling module

Provides python stdlib logging module support for the concealment library
and the experiment harness.

"""
import os
import logging
import logging.handlers
import tempfile
import shutil
from contextlib import contextmanager

from ..mcfsing import OglerError


def initOgler(level=logging.CRITICAL, **kwa):
    """
    Initialize the ogler global instance once
    Usage:
       # At top level of package __init__
       ogler = mcfse.help.ogling.initOgler(prefix='mcfse')

    Critical is most severe so the library is silent by default.
    The cli lowers the level and may open a log file before modules
    call ogler.getLogger() again through ogler.resetLevel.

    Parameters:
        level (int): default logging level
    """
    return Ogler(level=level, **kwa)


@contextmanager
def openOgler(cls=None, name="test", temp=True, **kwa):
    """
    Context manager wrapper Ogler instances.
    Defaults to temporary file logs.
    Context 'with' statements call .close on exit of 'with' block

    Parameters:
        cls (type): Ogler or subclass
        name (str): log file name component
        temp (bool): True means open in temporary directory, clear on close

    Usage:

    with openOgler(name="run") as ogler:
        logger = ogler.getLogger()  ....
    """
    ogler = None
    if cls is None:
        cls = Ogler
    try:
        ogler = cls(name=name, temp=temp, reopen=True, **kwa)
        yield ogler

    finally:
        if ogler:
            ogler.close()  # if .temp also clears


class Ogler():
    """
    Ogler instances provide loggers as the global logging facility.
    Only need one Ogler per application.
    Uses python stdlib logging module, logging.getLogger(name).

    Attributes:
        name (str): log file name component
        level (int): logging severity level
        temp (bool): True means log directory lives under /tmp
        prefix (str): application prefix used in message format and path
        headDirPath (str): head of persistent log directory path
        dirPath (str | None): full directory path once opened
        path (str | None): full log file path once opened
        opened (bool): True means file handler is ready
        consoled (bool): True means log to console (stderr)
        filed (bool): True means log to rotating file at .path when opened
    """
    Prefix = "mcfse"
    HeadDirPath = "/usr/local/var"
    TailDirPath = "logs"
    AltHeadDirPath = "~"  # fallback when head not permitted
    TempHeadDir = "/tmp"
    TempPrefix = "test_"
    TempSuffix = "_temp"
    Format = "{prefix} %(levelname)s %(name)s: %(message)s"

    def __init__(self, name='main', level=logging.ERROR, temp=False,
                 prefix=None, headDirPath=None, reopen=False, clear=False,
                 consoled=True, filed=True, when='D', interval=1, count=7):
        """
        Init logger factory instance

        Parameters:
            name (str): log file name component
            level (int): minimum level of loggers handed out
            temp (bool): True means use /tmp directory and clear on close
            prefix (str): application prefix
            headDirPath (str): custom head directory path for log file
            reopen (bool): True means open log file now
            clear (bool): True means clear .dirPath when closing in reopen
            consoled (bool): True means log to console (stderr)
            filed (bool): True means log to rotating file once opened
            when (str): rotation interval type
            interval (int): rotation interval count of when
            count (int): number of rotated backups to keep
        """
        if not (consoled or filed):
            raise OglerError("One of consoled or filed must be True.")

        self.name = name if name else 'main'
        self.level = level
        self.temp = True if temp else False
        self.prefix = prefix if prefix is not None else self.Prefix
        self.headDirPath = headDirPath if headDirPath is not None else self.HeadDirPath
        self.dirPath = None
        self.path = None
        self.opened = False
        self.consoled = True if consoled else False
        self.filed = True if filed else False
        self.when = when
        self.interval = interval
        self.count = count

        self.formatter = logging.Formatter(self.Format.format(prefix=self.prefix))
        self.consoleHandler = logging.StreamHandler()  # sys.stderr
        self.consoleHandler.setFormatter(self.formatter)
        self.fileHandler = None

        if reopen:
            self.reopen(clear=clear)


    def reopen(self, name=None, temp=None, clear=False):
        """
        Create directory .dirPath if need be and ready the file handler on .path.
        Closes first when already opened.

        Parameters:
            name (str | None): new log file name component
            temp (bool | None): None keeps .temp, otherwise assigns it
            clear (bool): True means remove prior directory when closing
        """
        if self.opened:
            self.close(clear=clear)

        if name is not None:
            self.name = name
        if temp is not None:
            self.temp = True if temp else False

        if self.temp:
            head = os.path.join(self.TempHeadDir, self.prefix, self.TailDirPath)
            os.makedirs(head, exist_ok=True)
            self.dirPath = tempfile.mkdtemp(prefix=self.TempPrefix,
                                            suffix=self.TempSuffix,
                                            dir=head)
        else:
            self.dirPath = self._persistentDirPath()

        self.path = os.path.join(self.dirPath, f"{self.name}.log")
        self.fileHandler = logging.handlers.TimedRotatingFileHandler(
                                                    self.path,
                                                    when=self.when,
                                                    interval=self.interval,
                                                    backupCount=self.count)
        self.fileHandler.setFormatter(self.formatter)
        self.opened = True


    def _persistentDirPath(self):
        """
        Returns usable persistent log directory path, falling back to a
        hidden directory under the user's home when the head is not permitted
        """
        dirPath = os.path.abspath(os.path.expanduser(
                        os.path.join(self.headDirPath, self.prefix, self.TailDirPath)))
        try:
            os.makedirs(dirPath, exist_ok=True)
            if os.access(dirPath, os.R_OK | os.W_OK):
                return dirPath
        except OSError:
            pass

        dirPath = os.path.abspath(os.path.expanduser(
                        os.path.join(self.AltHeadDirPath, f".{self.prefix}",
                                     self.TailDirPath)))
        os.makedirs(dirPath, exist_ok=True)
        return dirPath


    def close(self, clear=False):
        """
        Close file handler and set .opened to False.
        Removes directory at .dirPath when clear or .temp

        Parameters:
           clear (bool): True means remove log directory
        """
        if self.fileHandler is not None:
            self.fileHandler.close()
        self.opened = False
        if clear or self.temp:
            self.clearDirPath()


    def clearDirPath(self):
        """
        Remove logfile directory at .dirPath
        """
        if self.dirPath and os.path.exists(self.dirPath):
            shutil.rmtree(self.dirPath)


    def resetLevel(self, name=__name__, level=None, globally=False):
        """
        Resets the level of preexisting logger name to level.
        If level is None then use .level

        Parameters:
            name (str): logger name
            level (int | None): new level
            globally (bool): True means also assign .level
        """
        level = level if level is not None else self.level
        if globally:
            self.level = level
        logger = logging.getLogger(name)  # singleton
        logger.setLevel(level)


    def getLogger(self, name=__name__, level=None):
        """
        Returns Basic Logger with fresh handlers
        default is to name logger after module
        """
        logger = logging.getLogger(name)
        logger.propagate = False
        level = level if level is not None else self.level
        logger.setLevel(level)
        for handler in list(logger.handlers):  # no duplicate handlers
            logger.removeHandler(handler)
        if self.consoled:
            logger.addHandler(self.consoleHandler)
        if self.filed and self.opened:
            logger.addHandler(self.fileHandler)
        return logger
