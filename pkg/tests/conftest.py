from __future__ import annotations

import pytest

from kinsym.flowcli import builtin
from kinsym.symexpr import IdentityConfig

CRITERIA: dict[int, str] = {
    1: "flow hypotheses hold on SHEAR and ROTATION",
    2: "symplectic form: closure, suspension, Liouville ratio, exactness",
    3: "SHEAR hierarchy values, truncation and level invariants",
    4: "volume preservation of the vertical fields, both directions",
    5: "flat connection and commutation of W_k with the suspension",
    6: "bracket identities, isomorphism and involutivity",
    7: "adjugate solve agrees with the closed-form Hamiltonian field",
    8: "negative controls: NONFROZEN closure failure, BELTRAMI exit code 2",
    9: "planar check: Taylor-Green closed, violation caught",
    10: "byte-identical JSON for repeated seeded runs",
    11: "symbolic derivatives match central differences",
}

_outcomes: dict[int, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(n, []).append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n, text in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            tr.write_line(f"criterion {n:>2}: NOT RUN  {text}")
            continue
        failed = [name for name, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {n:>2}: {status}     {text} ({len(results) - len(failed)}/{len(results)} tests)"
        if failed:
            line += f"; failing: {', '.join(failed)}"
        tr.write_line(line)


@pytest.fixture(scope="session")
def cfg() -> IdentityConfig:
    return IdentityConfig()


@pytest.fixture(scope="session")
def shear():
    return builtin("SHEAR")


@pytest.fixture(scope="session")
def rotation():
    return builtin("ROTATION")


@pytest.fixture(scope="session")
def labels_scenario():
    return builtin("LABELS")
