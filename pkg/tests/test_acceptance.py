"""Acceptance criteria A1..A12 and the per-module invariant suites.

Each test prints a one-line PASS/FAIL summary (visible without ``-s``) and
fails with the list of failing checks.
"""
import pytest

from superhyp.acceptance import ACCEPTANCE, MODULE_SUITES, run_module_suite


def _report(crit, capsys):
    with capsys.disabled():
        print("\n" + crit.line())
    bad = [f"{c.name}: {c.error:.3e} > {c.tol:g}" for c in crit.checks if not c.passed]
    if crit.runtime_limit is not None and crit.runtime > crit.runtime_limit:
        bad.append(f"runtime {crit.runtime:.2f}s > {crit.runtime_limit:g}s")
    assert crit.passed, "; ".join(bad)


@pytest.mark.slow
@pytest.mark.parametrize("cid", list(ACCEPTANCE))
def test_acceptance_criterion(cid, capsys):
    _report(ACCEPTANCE[cid](), capsys)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(MODULE_SUITES))
def test_module_suite(name, capsys):
    _report(run_module_suite(name), capsys)
