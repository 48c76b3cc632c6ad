# -*- encoding: utf-8 -*-
"""
tests.help.test_kvicting module

"""
import os

import pytest

from mcfse.mcfsing import ConfigError
from mcfse.help import Kvict


def test_kvict_text():
    """
    Test Kvict parsing of key-value text
    """
    text = ("# experiment\n"
            "sequence = foreman.y4m\n"
            "sequence = synthetic:translate   # trailing comment\n"
            "\n"
            "Algorithms: tr, dmve,MCFSE\n"
            "fft = 64x64x16\n"
            "stride-x = 64\n"
            "gamma = 0.6\n"
            "trace = yes\n")
    kvict = Kvict.fromText(text)
    assert kvict.naball("sequence") == ["foreman.y4m", "synthetic:translate"]
    assert kvict.nab("sequence") == "synthetic:translate"
    assert kvict.nabList("algorithms") == ["tr", "dmve", "MCFSE"]
    assert kvict.nabTriple("fft") == (64, 64, 16)
    assert kvict.nabInt("stride_x") == 64
    assert kvict.nabFloat("gamma") == 0.6
    assert kvict.nabBool("trace") is True
    assert kvict.nab("missing") is None
    assert kvict.nab("missing", "x") == "x"
    assert kvict.nabInt("missing", 3) == 3
    assert kvict.naball("missing") is None

    assert kvict.lasts() == [("sequence", "synthetic:translate"),
                             ("algorithms", "tr, dmve,MCFSE"),
                             ("fft", "64x64x16"),
                             ("stride_x", "64"),
                             ("gamma", "0.6"),
                             ("trace", "yes")]

    kvict.add("gamma", "0.5")  # later values win
    assert kvict.nabFloat("gamma") == 0.5
    """Done Test"""


def test_kvict_errors(tmp_path):
    """
    Test Kvict conversion errors and file loading
    """
    with pytest.raises(ConfigError):
        Kvict.fromText("no separator here\n")
    with pytest.raises(ConfigError):
        Kvict.fromText("= value\n")

    kvict = Kvict.fromText("n = two\nf = x\nb = maybe\nt = 1x2\n")
    with pytest.raises(ConfigError):
        kvict.nabInt("n")
    with pytest.raises(ConfigError):
        kvict.nabFloat("f")
    with pytest.raises(ConfigError):
        kvict.nabBool("b")
    with pytest.raises(ConfigError):
        kvict.nabTriple("t")

    path = os.path.join(tmp_path, "run.cfg")
    with open(path, "w") as f:
        f.write("np = 1\nnf = 0\n")
    kvict = Kvict.fromPath(path)
    assert kvict.nabInt("np") == 1
    assert kvict.nabInt("nf") == 0
    assert repr(kvict) == "Kvict([('np', '1'), ('nf', '0')])"
    """Done Test"""


if __name__ == "__main__":
    test_kvict_text()
