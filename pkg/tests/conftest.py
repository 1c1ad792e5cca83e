import pytest

from simpcx.complex import Simplex2Complex
from simpcx.homology import homology_summary, kappa_lower_torsion

# Every complex instantiated while the suite runs, keyed by its triangles
# (extra edges never change torsion). The torsion-bound sweep walks this.
BUILT: dict = {}
_init = Simplex2Complex.__init__


def _recording_init(self, *args, **kwargs):
    _init(self, *args, **kwargs)
    if self.triangles and self.triangles not in BUILT:
        BUILT[self.triangles] = self


Simplex2Complex.__init__ = _recording_init

_checked: set = set()


def torsion_bound_violations():
    """Complexes built so far whose s2 is below the torsion lower bound."""
    bad = []
    for key, X in list(BUILT.items()):
        if key in _checked:
            continue
        h = homology_summary(X)
        if X.s2 < kappa_lower_torsion(h.torsion_order):
            bad.append((X, h))
        _checked.add(key)
    return bad


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, name = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {name}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    n = getattr(item.function, "criterion_number", None)
    if n is None or report.when != "call":
        return
    ok = report.passed
    name = item.function.criterion_name
    ACCEPTANCE[n] = (ok, name)
    tr = item.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line(f"\n[acceptance {n:>2}] {'PASS' if ok else 'FAIL'}  {name}")


def acceptance(n: int, name: str):
    """Tag a test as acceptance criterion ``n``."""
    def deco(fn):
        fn.criterion_number = n
        fn.criterion_name = name
        return fn
    return deco

