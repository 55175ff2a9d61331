# tests/cli/test_segment.py

from pathlib import Path

from subkit.cli.main import main
from subkit.tests.conftest import ANNOTATED_EXAMPLE, EXAMPLE_WORDS, PLAIN_EXAMPLE, SRT_EXAMPLE, timings_tsv


def test_segment_example_to_srt(write_file, tmp_path, capsys):
    """Test plain text plus word timings gives the example SRT byte for byte."""
    source = write_file("input.txt", PLAIN_EXAMPLE + "\n")
    timings = write_file("timings.tsv", timings_tsv(EXAMPLE_WORDS))
    srt = tmp_path / "out.srt"
    annotated = tmp_path / "out.txt"
    code = main([
        "segment", "--input", source, "--timings", timings,
        "--srt-out", str(srt), "--annotated-out", str(annotated), "--start-index", "10"
    ])
    assert code == 0
    assert srt.read_bytes() == SRT_EXAMPLE.encode("utf-8")
    assert annotated.read_text(encoding="utf-8") == ANNOTATED_EXAMPLE + "\n"
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "segmented 1 sentences: 2 blocks" in captured.err
    assert "timing: alignment" in captured.err


def test_segment_to_stdout(write_file, capsys):
    """Test the annotated corpus goes to stdout when no output is named."""
    source = write_file("input.txt", PLAIN_EXAMPLE + "\n")
    assert main(["segment", "--input", source]) == 0
    assert capsys.readouterr().out == ANNOTATED_EXAMPLE + "\n"


def test_segment_without_timings_reports_proportional(write_file, tmp_path, capsys):
    """Test reading-speed timing is named in the summary."""
    source = write_file("input.txt", PLAIN_EXAMPLE + "\n")
    srt = tmp_path / "out.srt"
    assert main(["segment", "--input", source, "--srt-out", str(srt)]) == 0
    assert "proportional" in capsys.readouterr().err
    assert srt.read_text(encoding="utf-8").startswith("1\n00:00:00,000 --> ")


def test_segment_keeps_existing_breaks(write_file, capsys):
    """Test annotated input is kept unless resegmentation is asked for."""
    source = write_file("input.txt", "one two <eob> three four\n")
    assert main(["segment", "--input", source]) == 0
    assert capsys.readouterr().out == "one two <eob> three four <eob>\n"
    assert main(["segment", "--input", source, "--resegment"]) == 0
    assert capsys.readouterr().out == "one two three four <eob>\n"


def test_segment_flags_change_limits(write_file, capsys):
    """Test constraint flags reach the segmenter."""
    source = write_file("input.txt", "alpha beta gamma delta\n")
    assert main(["segment", "--input", source, "--max-chars-per-line", "11", "--max-lines-per-block", "1"]) == 0
    assert capsys.readouterr().out == "alpha beta <eob> gamma delta <eob>\n"


def test_segment_empty_input(write_file):
    """Test an empty input file is a format error."""
    assert main(["segment", "--input", write_file("empty.txt", "")]) == 2


def test_segment_bad_start_index(write_file):
    """Test a start index below 1 is a usage error."""
    source = write_file("input.txt", PLAIN_EXAMPLE + "\n")
    assert main(["segment", "--input", source, "--start-index", "0"]) == 64


def test_segment_missing_input(tmp_path):
    """Test a missing input file is a format error."""
    assert main(["segment", "--input", str(Path(tmp_path) / "absent.txt")]) == 2
