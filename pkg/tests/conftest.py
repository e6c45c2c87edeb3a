import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

import jkinv  # noqa: E402
from jkinv import jk, pencil  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# Every PencilInvariants and JKReport built during the session, so the integer
# identities can be asserted on all of them.
PRODUCED: dict[str, list] = {"pencils": [], "reports": []}
ACCEPTANCE: dict[int, tuple[bool, str]] = {}

_orig_pencil_invariants = pencil.pencil_invariants
_orig_jk_invariants = jk.jk_invariants


def _recording_pencil_invariants(*args, **kwargs):
    inv = _orig_pencil_invariants(*args, **kwargs)
    PRODUCED["pencils"].append(inv)
    return inv


def _recording_jk_invariants(*args, **kwargs):
    report = _orig_jk_invariants(*args, **kwargs)
    PRODUCED["reports"].append(report)
    return report


def _install() -> None:
    for name, mod in list(sys.modules.items()):
        if not name.startswith("jkinv"):
            continue
        if getattr(mod, "pencil_invariants", None) is _orig_pencil_invariants:
            mod.pencil_invariants = _recording_pencil_invariants
        if getattr(mod, "jk_invariants", None) is _orig_jk_invariants:
            mod.jk_invariants = _recording_jk_invariants


import jkinv.cli  # noqa: E402,F401
import jkinv.suite  # noqa: E402,F401
import jkinv.shifts  # noqa: E402,F401

_install()


@pytest.fixture(autouse=True)
def integer_identities():
    """Fail any test that produced a pencil or report violating the dimension identities."""
    start_p, start_r = len(PRODUCED["pencils"]), len(PRODUCED["reports"])
    yield
    for inv in PRODUCED["pencils"][start_p:]:
        m, n = inv.shape
        assert inv.k_vert + inv.k_hor == m + n - inv.rank - inv.deg_D, inv
    for rep in PRODUCED["reports"][start_r:]:
        if rep.witness.agreed:
            assert rep.k_vert + rep.k_hor == rep.dim_V + rep.regular.dim_st - rep.deg_D, rep


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    pcount, rcount = len(PRODUCED["pencils"]), len(PRODUCED["reports"])
    terminalreporter.write_line(f"identities checked on {pcount} pencils and {rcount} reports")


__all__ = ["jkinv"]
