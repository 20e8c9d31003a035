from __future__ import annotations

from collections import defaultdict

import pytest

from vbquiver.diagram import diagram_from_dict
from vbquiver.io import bundled_json, bundled_knots, load_data_vector

DATA_VECTORS = ("dv41", "dv42", "dv43", "z7", "z5", "x3")

# criterion number -> list of (label, ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)
CRITERIA = {
    1: "validator pins and ten single-axiom mutations",
    2: "homset sizes of 2.1 and the virtual Hopf link",
    3: "weight multiset and Z5 evaluation of 3.1",
    4: "four invariants of 3.1 and 3.2",
    5: "path invariants of 3.4 and 4.1",
    6: "edge matrix classes from the four-crossing table",
    7: "property suites",
}


class Recorder:
    def __init__(self, criterion: int):
        self.criterion = criterion

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[self.criterion].append((label, bool(ok), detail))
        assert ok, f"criterion {self.criterion}, {label}: {detail}"


@pytest.fixture
def criterion():
    return Recorder


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(CRITERIA):
        checks = ACCEPTANCE.get(k, [])
        if not checks:
            tr.write_line(f"criterion {k}: NOT RUN   {CRITERIA[k]}")
            continue
        passed = sum(ok for _, ok, _ in checks)
        verdict = "PASS" if passed == len(checks) else "FAIL"
        tr.write_line(f"criterion {k}: {verdict}   {CRITERIA[k]} ({passed}/{len(checks)} checks exact)")
        for label, ok, detail in checks:
            if not ok or tr.config.option.verbose > 0:
                tr.write_line(f"    {'ok  ' if ok else 'FAIL'} {label}" + (f": {detail}" if detail else ""))


@pytest.fixture(scope="session")
def dvs():
    return {name: load_data_vector(name) for name in DATA_VECTORS}


@pytest.fixture(scope="session")
def knots():
    return {D.name: D for D in bundled_knots()}


@pytest.fixture(scope="session")
def move_pairs():
    return [(p["move"], diagram_from_dict(p["before"]), diagram_from_dict(p["after"])) for p in bundled_json("move_pairs.json")]
