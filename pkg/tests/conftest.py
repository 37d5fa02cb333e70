import pytest

from quadric_census import backend_name

CRITERIA = {
    1: "constant C",
    2: "d=144 residuals and total count",
    3: "fast/brute oracle equivalence",
    4: "residual exponent",
    5: "orbit machinery",
    6: "analytic identities",
    7: "Eisenstein Fourier cross-check",
    8: "exponent formulas",
    9: "shear law",
    10: "determinism across thread counts",
}

_results: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        state = "xfailed" if hasattr(rep, "wasxfail") else rep.outcome
        _results.setdefault(marker.args[0], []).append((item.name, state))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section(f"acceptance criteria (backend: {backend_name()})")
    for n in sorted(CRITERIA):
        got = _results.get(n)
        if not got:
            tr.write_line(f"criterion {n:2d} [{CRITERIA[n]}]: NOT RUN")
            continue
        bad = [name if state != "xfailed" else f"{name} [xfail]" for name, state in got if state != "passed"]
        verdict = "PASS" if not bad else "FAIL"
        extra = f" (not passing: {', '.join(bad)})" if bad else ""
        tr.write_line(f"criterion {n:2d} [{CRITERIA[n]}]: {verdict} ({len(got) - len(bad)}/{len(got)} checks){extra}")
