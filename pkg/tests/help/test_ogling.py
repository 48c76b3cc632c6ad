# -*- encoding: utf-8 -*-
"""
tests.help.test_ogling module

"""
import pytest

import os
import logging

from mcfse import help
from mcfse.mcfsing import OglerError
from mcfse.help import ogling


def test_openogler():
    """
    Test context manager openOgler
    """
    with ogling.openOgler(level=logging.DEBUG) as ogler:  # default is temp = True
        assert isinstance(ogler, ogling.Ogler)
        assert ogler.name == "test"
        assert ogler.level == logging.DEBUG
        assert ogler.temp == True
        assert ogler.prefix == 'mcfse'
        assert ogler.headDirPath == ogler.HeadDirPath == "/usr/local/var"
        assert ogler.dirPath.startswith("/tmp/mcfse/logs/test_")
        assert ogler.dirPath.endswith("_temp")
        assert ogler.path.endswith("/test.log")
        assert ogler.opened

        # console and file handlers
        logger = ogler.getLogger()
        assert len(logger.handlers) == 2
        logger.debug("Test logger at debug level")
        logger.info("Test logger at info level")
        logger.error("Test logger at error level")

        with open(ogler.path, 'r') as logfile:
            contents = logfile.read()
            assert contents == ('mcfse DEBUG mcfse.help.ogling: Test logger at debug level\n'
                                'mcfse INFO mcfse.help.ogling: Test logger at info level\n'
                                'mcfse ERROR mcfse.help.ogling: Test logger at error level\n')

        # fresh handlers so no duplicate lines
        logger = ogler.getLogger()
        assert len(logger.handlers) == 2
        logger.error("Again")
        with open(ogler.path, 'r') as logfile:
            assert logfile.read().endswith('mcfse ERROR mcfse.help.ogling: Again\n')

        dirPath = ogler.dirPath

    assert not ogler.opened
    assert not os.path.exists(dirPath)  # temp cleared on close
    help.ogler.resetLevel(level=help.ogler.level)
    help.ogler.getLogger()  # restore package handlers

    """End Test"""


def test_ogler():
    """
    Test Ogler class instance that builds loggers
    """
    ogler = ogling.Ogler(name="test", )
    assert ogler.path is None
    assert ogler.opened == False
    assert ogler.level == logging.ERROR  # default is ERROR
    assert ogler.dirPath == None

    # only console since not opened
    logger = ogler.getLogger()
    assert len(logger.handlers) == 1
    assert logger.level == logging.ERROR

    ogler = ogling.Ogler(name="test", level=logging.DEBUG, temp=True,
                         reopen=True, clear=True)
    assert ogler.dirPath.startswith("/tmp/mcfse/logs/test_")
    assert ogler.opened == True
    with open(ogler.path, 'r') as logfile:
        assert logfile.read() == ''

    logger = ogler.getLogger()
    logger.info("Test logger at info level")
    with open(ogler.path, 'r') as logfile:
        assert logfile.read() == 'mcfse INFO mcfse.help.ogling: Test logger at info level\n'

    ogler.resetLevel(level=logging.WARNING)
    assert logger.level == logging.WARNING
    assert ogler.level == logging.DEBUG
    ogler.resetLevel(level=logging.INFO, globally=True)
    assert ogler.level == logging.INFO

    ogler.close()
    assert ogler.opened == False
    assert not os.path.exists(ogler.dirPath)

    with pytest.raises(OglerError):
        ogling.Ogler(consoled=False, filed=False)

    help.ogler.resetLevel(level=help.ogler.level)
    help.ogler.getLogger()  # restore package handlers
    """End Test"""


def test_init_ogler():
    """
    Test package global ogler
    """
    assert isinstance(help.ogler, ogling.Ogler)
    assert help.ogler.level == logging.CRITICAL
    assert help.ogler.prefix == 'mcfse'
    assert help.ogler.opened == False
    """End Test"""


if __name__ == "__main__":
    test_openogler()
    test_ogler()
    test_init_ogler()
