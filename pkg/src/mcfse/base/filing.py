# -*- encoding: utf-8 -*-
"""
mcfse.base.filing module

Output directory management for experiment artifacts

"""
import os
import stat
import shutil
import tempfile
from contextlib import contextmanager

from .. import mcfsing
from .. import help
from ..help.helping import writeAtomic

logger = help.ogler.getLogger()


@contextmanager
def openFiler(cls=None, name="test", temp=True, reopen=True, clear=False, **kwa):
    """
    Context manager wrapper Filer instances for managing an artifact directory.

    Defaults to using temporary directory path.
    Context 'with' statements call .close on exit of 'with' block

    Parameters:
        cls (type): Filer or subclass
        name (str): directory name component
        temp (bool): True means open in temporary directory, clear on close
        reopen (bool): True means create directory with this init
        clear (bool): True means remove directory upon close

    Usage:

    with openFiler(name="run") as filer:
        filer.write("report.csv", text)
    """
    filer = None
    if cls is None:
        cls = Filer
    try:
        filer = cls(name=name, temp=temp, reopen=reopen, clear=clear, **kwa)
        yield filer

    finally:
        if filer:
            filer.close(clear=filer.temp or clear)  # clears if filer.temp


class Filer(mcfsing.Mixin):
    """
    Filer instances manage the directory that receives concealed sequences,
    reports and frame dumps of one experiment run.

    Class Attributes:
        HeadDirPath (str): default abs dir path head such as "/usr/local/var"
        TailDirPath (str): default rel dir path tail when using head
        AltHeadDirPath (str): fallback head when head not permitted
        AltTailDirPath (str): fallback tail used with alt head
        TempHeadDir (str): default temp abs dir path head such as "/tmp"
        TempPrefix (str): temp dir prefix
        TempSuffix (str): temp dir suffix
        Perm (int): directory permissions

    Attributes:
        name (str): unique path component
        base (str): optional path component inserted before name
        temp (bool): True means use TempHeadDir
        headDirPath (str): head directory path, may be an explicit output
            directory when .direct
        direct (bool): True means .headDirPath is used as is, without tail,
            base and name components
        path (str | None): full directory path once created
        perm (int): OS permissions for path directory
        opened (bool): True means directory exists and is usable
    """
    HeadDirPath = "/usr/local/var"
    TailDirPath = "mcfse/runs"
    AltHeadDirPath = "~"
    AltTailDirPath = ".mcfse/runs"
    TempHeadDir = "/tmp"
    TempPrefix = "mcfse_"
    TempSuffix = "_test"
    Perm = stat.S_IRWXU | stat.S_IRGRP | stat.S_IXGRP  # 0o750

    def __init__(self, *, name='main', base="", temp=False, headDirPath=None,
                 direct=False, perm=None, reopen=True, clear=False, **kwa):
        """
        Parameters:
            name (str): directory name component
            base (str): optional directory path segment inserted before name
            temp (bool): True means temporary directory cleared on close
            headDirPath (str): head directory path
            direct (bool): True means headDirPath is the output directory
            perm (int): directory permissions
            reopen (bool): True means create directory now
            clear (bool): True means remove existing directory when reopening
        """
        super(Filer, self).__init__(**kwa)  # Mixin for Mult-inheritance MRO

        if os.path.isabs(name):
            raise mcfsing.FilerError(f"Not relative {name=} path.")
        if os.path.isabs(base):
            raise mcfsing.FilerError(f"Not relative {base=} path.")

        self.name = name
        self.base = base
        self.temp = True if temp else False
        self.headDirPath = headDirPath if headDirPath is not None else self.HeadDirPath
        self.direct = True if direct else False
        self.perm = perm if perm is not None else self.Perm
        self.path = None
        self.opened = False
        self._tempHead = None

        if reopen:
            self.reopen(clear=clear)


    def reopen(self, clear=False):
        """
        Create directory at .path if need be. Returns .opened

        Parameters:
            clear (bool): True means remove directory and contents first
        """
        self.close(clear=clear)
        self.path = self.remake()
        self.opened = True
        return self.opened


    def remake(self):
        """
        Make and return directory path, falling back to alt head when head
        is not permitted
        """
        if self.temp:
            self._tempHead = tempfile.mkdtemp(prefix=self.TempPrefix,
                                              suffix=self.TempSuffix,
                                              dir=self.TempHeadDir)
            path = os.path.join(self._tempHead, self.TailDirPath, self.base, self.name)
            os.makedirs(path, mode=self.perm, exist_ok=True)
            return os.path.abspath(path)

        if self.direct:
            path = os.path.abspath(os.path.expanduser(self.headDirPath))
            os.makedirs(path, mode=self.perm, exist_ok=True)
            return path

        path = os.path.abspath(os.path.expanduser(
                    os.path.join(self.headDirPath, self.TailDirPath,
                                 self.base, self.name)))
        try:
            os.makedirs(path, mode=self.perm, exist_ok=True)
            if os.access(path, os.R_OK | os.W_OK):
                return path
        except OSError:
            pass

        path = os.path.abspath(os.path.expanduser(
                    os.path.join(self.AltHeadDirPath, self.AltTailDirPath,
                                 self.base, self.name)))
        logger.info("Using alternate run directory %s.", path)
        os.makedirs(path, mode=self.perm, exist_ok=True)
        return path


    def pathOf(self, name):
        """
        Returns full path of artifact file name inside .path
        """
        if not self.opened:
            raise mcfsing.FilerError("Filer not opened.")
        if os.path.isabs(name):
            raise mcfsing.FilerError(f"Not relative {name=} path.")
        return os.path.join(self.path, name)


    def write(self, name, data):
        """
        Atomically write data bytes or str to artifact file name in .path.
        Returns full path.
        """
        path = self.pathOf(name)
        os.makedirs(os.path.dirname(path), exist_ok=True)
        writeAtomic(path, data)
        return path


    def close(self, clear=False):
        """
        Mark closed and if clear remove directory at .path.
        For temp filers the temporary head directory is removed too.
        """
        self.opened = False
        if clear and self.path and os.path.exists(self.path):
            if self.temp and self._tempHead:
                shutil.rmtree(self._tempHead)
            else:
                shutil.rmtree(self.path)
        return not self.opened
