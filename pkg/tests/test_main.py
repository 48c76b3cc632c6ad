# -*- encoding: utf-8 -*-
"""
tests.test_main module

"""
import os

import pytest

from mcfse.cli import main, overridesOf, parser
from mcfse.core.videoing import loadY4m, writeY4m
from mcfse.core.lossing import loadPattern
from mcfse.app.synthing import makeTranslation


def test_parser():
    """
    Test command line parsing and config overrides
    """
    with pytest.raises(SystemExit):
        main([])

    args = parser.parse_args(["run", "exp.conf", "--np", "1", "--fft", "32x32x8",
                              "--stride-x", "32", "--sequence", "a.y4m",
                              "--sequence", "b.y4m"])
    overrides = overridesOf(args)
    assert overrides == {"np": 1, "fft": "32x32x8", "stride_x": 32,
                         "sequence": ["a.y4m", "b.y4m"]}
    args = parser.parse_args(["conceal", "in.y4m", "--output", "out.y4m",
                              "--algorithm", "TR"])
    assert overridesOf(args) == {}
    """Done Test"""


def test_pattern(tmp_path):
    """
    Test pattern subcommand
    """
    path = str(tmp_path / "pattern.txt")
    assert main(["pattern", "--width", "352", "--height", "288", "--frame-count", "150",
                 "--output", path]) == 0
    mask = loadPattern(path, 352, 288, 150)
    assert len(mask.blocks) == 5 * 30
    assert sorted({b.frame for b in mask.blocks}) == [16, 46, 76, 106, 136]

    assert main(["pattern", "--width", "352", "--height", "288", "--frame-count", "20",
                 "--frames", "1,3", "--frame-base", "1", "--output", path]) == 0
    mask = loadPattern(path, 352, 288, 20)
    assert sorted({b.frame for b in mask.blocks}) == [0, 2]
    """Done Test"""


def test_conceal(tmp_path):
    """
    Test conceal subcommand and its exit codes
    """
    source = str(tmp_path / "source.y4m")
    output = str(tmp_path / "output.y4m")
    seq = makeTranslation(64, 48, 4, motion=(2, 0), seed=3)
    writeY4m(seq, source)

    assert main(["conceal", source, "--output", output, "--algorithm", "DMVE",
                 "--frames", "1,3", "--stride-x", "32", "--stride-y", "32"]) == 0
    concealed = loadY4m(output)
    assert concealed.luma.shape == seq.luma.shape
    assert (concealed.luma[0] == seq.luma[0]).all()
    assert (concealed.luma[1, 16:32, 16:32] == seq.luma[1, 16:32, 16:32]).all()

    # no previous frame for temporal replacement of frame 0
    assert main(["conceal", source, "--output", output, "--algorithm", "TR",
                 "--frames", "0", "--stride-x", "32", "--stride-y", "32"]) == 1
    assert os.path.exists(output)

    assert main(["conceal", str(tmp_path / "missing.y4m"), "--output", output]) == 2
    assert main(["conceal", source, "--output", output, "--np", "-1"]) == 2
    """Done Test"""


def test_run(tmp_path, capsys):
    """
    Test run subcommand end to end
    """
    config = tmp_path / "exp.conf"
    out = tmp_path / "out"
    config.write_text("# small experiment\n"
                      "sequence = synthetic:translate\n"
                      "synth_width = 96\n"
                      "synth_height = 64\n"
                      "synth_frames = 4\n"
                      "synth_motion = 4,0\n"
                      "frames = 2\n"
                      "stride_x = 48\n"
                      "stride_y = 48\n"
                      "algorithms = TR,MCFSE\n")
    assert main(["run", str(config), "--output", str(out), "--fft", "32x32x8",
                 "--border", "8", "--iterations", "10", "--formats", "json"]) == 0
    table = capsys.readouterr().out
    assert table.startswith("# Comparison of concealment algorithms")
    assert "| Algorithm | translate |" in table
    assert "| TR |" in table and "| MCFSE |" in table
    for name in ("report.md", "report.csv", "blocks.csv", "report.json",
                 "translate_corrupted.y4m", "translate_pattern.txt",
                 "translate_TR.y4m", "translate_MCFSE.y4m"):
        assert (out / name).exists()

    assert main(["run", str(config), "--output", str(out),
                 "--algorithms", "BOGUS"]) == 2
    assert main(["run", str(tmp_path / "missing.conf")]) == 2
    """Done Test"""
