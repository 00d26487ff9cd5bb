import json
import subprocess
import sys

import numpy as np
import pytest

from vesiseg.cli import main
from vesiseg.imagefile import write_png, write_pnm
from vesiseg.raster import GrayImage
from vesiseg.synthetic import honeycomb, vesicular


@pytest.fixture
def sample(tmp_path):
    return write_png(vesicular(64, 10, rng=7), tmp_path / "sample.png")


def _lines(capsys):
    return [json.loads(line) for line in capsys.readouterr().out.splitlines()]


def test_segment_default_shannon(tmp_path, sample, capsys):
    assert main(["segment", str(sample), "--out", str(tmp_path / "o")]) == 0
    (record,) = _lines(capsys)
    assert record["mode"] == "shannon" and 0 <= record["tau"] <= 255
    names = sorted(p.name for p in (tmp_path / "o").iterdir())
    assert names == ["sample_areas.csv", "sample_binary.png", "sample_edges.png",
                     "sample_labels.png", "sample_summary.json"]


def test_segment_honeycomb_manual_invert(tmp_path, capsys):
    path = write_png(honeycomb(fg=230, bg=20), tmp_path / "comb.png")
    code = main(["segment", str(path), "--tau", "128", "--invert", "--emit", "areas",
                 "--emit", "summary", "--out", str(tmp_path)])
    assert code == 0
    (record,) = _lines(capsys)
    assert record["n_components"] == 36 and record["mode"] == "manual"
    assert len((tmp_path / "comb_areas.csv").read_text().splitlines()) == 37


def test_segment_tsallis(tmp_path, sample, capsys):
    assert main(["segment", str(sample), "--tsallis", "--q", "0.5", "--emit", "summary",
                 "--out", str(tmp_path)]) == 0
    (record,) = _lines(capsys)
    assert record["mode"] == "tsallis"


def test_segment_all_white_exit_zero(tmp_path, capsys):
    path = write_png(GrayImage(np.full((8, 8), 255)), tmp_path / "w.png")
    assert main(["segment", str(path), "--tau", "100", "--out", str(tmp_path)]) == 0
    assert _lines(capsys)[0]["n_components"] == 0
    assert (tmp_path / "w_areas.csv").read_text() == "label,area\n"


def test_threshold_subcommand(tmp_path, sample, capsys):
    assert main(["threshold", str(sample), "--out", str(tmp_path / "t"), "--format", "pgm"]) == 0
    (record,) = _lines(capsys)
    assert set(record) == {"input", "tau", "mode"}
    assert [p.name for p in (tmp_path / "t").iterdir()] == ["sample_binary.pgm"]


def test_areas_subcommand(tmp_path, capsys):
    data = np.full((6, 6), 255, dtype=np.uint8)
    data[1:3, 1:3] = 0
    data[4, 4] = 0
    path = write_pnm(GrayImage(data), tmp_path / "b.pgm")
    assert main(["areas", str(path), "--emit", "areas", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "b_areas.csv").read_text() == "label,area\n1,4\n2,1\n"


def test_areas_rejects_grey_input(tmp_path, sample):
    assert main(["areas", str(sample), "--out", str(tmp_path)]) == 3


def test_stats_subcommand(tmp_path, capsys):
    path = write_pnm(GrayImage(np.array([[0, 255]])), tmp_path / "s.pgm")
    assert main(["stats", str(path)]) == 0
    (record,) = _lines(capsys)
    assert record["mean_brightness"] == 127.5 and record["std_brightness"] == 127.5


def test_exit_decode_error(tmp_path):
    bad = tmp_path / "bad.png"
    bad.write_bytes(b"not an image")
    assert main(["segment", str(bad), "--out", str(tmp_path)]) == 3
    assert main(["segment", str(tmp_path / "missing.png"), "--out", str(tmp_path)]) == 3


def test_exit_degenerate_histogram(tmp_path):
    path = write_png(GrayImage(np.full((5, 5), 77)), tmp_path / "flat.png")
    assert main(["segment", str(path), "--out", str(tmp_path)]) == 4


def test_exit_output_error(tmp_path, sample):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["segment", str(sample), "--out", str(blocker / "sub")]) == 5


@pytest.mark.parametrize(
    "argv",
    [
        ["segment", "x.png", "--tau", "300"],
        ["segment", "x.png", "--mode", "manual"],
        ["segment", "x.png", "--mode", "tsallis", "--q", "1"],
        ["segment", "x.png", "--tau", "3", "--mode", "shannon"],
        ["segment", "x.png", "--smooth", "-2"],
        ["segment", "x.png", "--connectivity", "6"],
        ["segment", "x.png", "--emit", "pdf"],
        ["frobnicate"],
    ],
)
def test_exit_bad_arguments(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_module_entry_point(tmp_path, sample):
    proc = subprocess.run(
        [sys.executable, "-m", "vesiseg", "stats", str(sample)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["width"] == 64


def test_benchmark_runs(capsys):
    from vesiseg.bench import main as bench_main

    bench_main(["--sizes", "16", "--repeat", "1"])
    out = capsys.readouterr().out
    assert "labeling" in out and "pipeline" in out
