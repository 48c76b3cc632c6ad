# -*- encoding: utf-8 -*-
"""
tests.base.test_filing module

"""
import os

import pytest

from mcfse import mcfsing
from mcfse.base import filing


def test_filer_temp():
    """
    Test Filer in temporary directory
    """
    filer = filing.Filer(name="test", temp=True)
    assert filer.opened
    assert filer.temp
    assert filer.path.endswith(os.path.join("mcfse/runs", "test"))
    assert os.path.basename(filer._tempHead).startswith(filing.Filer.TempPrefix)
    assert os.path.exists(filer.path)

    path = filer.write("report.md", "# table\n")
    assert path == os.path.join(filer.path, "report.md")
    with open(path) as f:
        assert f.read() == "# table\n"

    path = filer.write("frames/first.pgm", b"P5\n1 1\n255\n\x00")
    with open(path, "rb") as f:
        assert f.read() == b"P5\n1 1\n255\n\x00"

    with pytest.raises(mcfsing.FilerError):
        filer.pathOf("/abs/report.md")

    head = filer._tempHead
    filer.close(clear=True)
    assert not filer.opened
    assert not os.path.exists(filer.path)
    assert not os.path.exists(head)

    with pytest.raises(mcfsing.FilerError):
        filer.pathOf("report.md")
    """Done Test"""


def test_filer_direct(tmp_path):
    """
    Test Filer with explicit output directory
    """
    head = tmp_path / "out"
    filer = filing.Filer(name="", headDirPath=str(head), direct=True)
    assert filer.opened
    assert filer.path == str(head)
    assert os.path.isdir(filer.path)
    filer.write("report.csv", "algorithm\n")
    filer.close()
    assert not filer.opened
    assert os.path.exists(os.path.join(str(head), "report.csv"))  # not cleared

    filer.reopen()
    assert filer.opened
    filer.close(clear=True)
    assert not os.path.exists(str(head))

    with pytest.raises(mcfsing.FilerError):
        filing.Filer(name="/abs")
    with pytest.raises(mcfsing.FilerError):
        filing.Filer(base="/abs", reopen=False)
    """Done Test"""


def test_filer_alt(tmp_path, monkeypatch):
    """
    Test Filer falls back to alt head when head not permitted
    """
    head = tmp_path / "head"
    head.write_text("not a directory")  # makedirs under a file fails
    monkeypatch.setattr(filing.Filer, "AltHeadDirPath", str(tmp_path / "alt"))
    filer = filing.Filer(name="run", headDirPath=str(head))
    assert filer.path == os.path.join(str(tmp_path / "alt"), ".mcfse/runs", "run")
    assert os.path.isdir(filer.path)
    filer.close(clear=True)
    """Done Test"""


def test_open_filer():
    """
    Test openFiler context manager
    """
    with filing.openFiler(name="ctx") as filer:
        assert isinstance(filer, filing.Filer)
        assert filer.temp
        assert filer.opened
        path = filer.path
        filer.write("a.txt", "a")
        assert os.path.exists(path)

    assert not filer.opened
    assert not os.path.exists(path)
    """Done Test"""


if __name__ == "__main__":
    test_filer_temp()
    test_open_filer()
