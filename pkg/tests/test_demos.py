import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.name)
def test_demo_runs(path, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("BEACONLOC_DEMO_OUT", str(tmp_path))
    monkeypatch.setenv("BEACONLOC_DEMO_TRIALS", "200")
    monkeypatch.setenv("BEACONLOC_DEMO_STEP", "1.0")
    runpy.run_path(str(path), run_name="__main__")
    assert capsys.readouterr().out
