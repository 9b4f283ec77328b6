"""The twelve acceptance criteria, each checked exactly on the default box.

One suite run feeds every test; each test prints its own PASS/FAIL line.
"""

from __future__ import annotations

import json

import pytest

from gammaconf.suite import CRITERIA, run_suite


@pytest.fixture(scope="module")
def suite_run(tmp_path_factory):
    mp = pytest.MonkeyPatch()
    mp.delenv("GC_RANGE", raising=False)
    out = tmp_path_factory.mktemp("acceptance")
    try:
        status = run_suite(out, echo=False)
    finally:
        mp.undo()
    doc = json.loads((out / "suite_report.json").read_text())
    return status, out, {r["number"]: r for r in doc["results"]}, doc


def _report(results, number):
    r = results[number]
    tag = "PASS" if r["ok"] else "FAIL"
    print(f"\n[{tag}] criterion {number:>2} {r['title']} ({r['seconds']:.1f}s): {r['detail']}")
    return r


TITLES = dict(CRITERIA)


@pytest.mark.parametrize("number", [n for n, _ in CRITERIA],
                         ids=[f"{n:02d}_{t.replace(' ', '_')}" for n, t in CRITERIA])
def test_criterion(suite_run, number):
    _, _, results, _ = suite_run
    r = _report(results, number)
    assert r["title"] == TITLES[number]
    assert r["ok"], r["detail"]


def test_suite_exit_status_and_artifacts(suite_run):
    status, out, results, doc = suite_run
    assert set(results) == set(TITLES)
    assert doc["plan"] == {"gen_bound": 4, "group_bound": 4}
    assert status == (0 if all(r["ok"] for r in results.values()) else 1)
    disc = json.loads((out / "discrepancies.json").read_text())
    names = {d["name"] for d in disc["reports"]}
    assert {"ex33_eps_sector_sign", "translation_delta_shift_sign"} <= names
    print(f"\nsuite wall clock {doc['seconds']:.1f}s, exit status {status}")
