"""The narrative scripts in demos/ run to completion (the 625-dim one is slow)."""

import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).resolve().parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", [pytest.param(p, marks=pytest.mark.slow) if "height_r" in p.name else p
                                  for p in DEMOS], ids=lambda p: p.stem)
def test_demo_runs(path, capsys):
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out
