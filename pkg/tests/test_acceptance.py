"""Acceptance gate: every criterion, exact comparisons, one line each.

All comparisons are identity/oracle based over exact rational arithmetic
(tolerance zero).  Run with -s to see the per-criterion PASS lines.
"""

import pytest

from feyncomb import checks


@pytest.mark.parametrize("title,criterion", checks.CRITERIA, ids=[t for t, _ in checks.CRITERIA])
def test_acceptance_criterion(title, criterion):
    results = criterion()
    assert results, f"criterion produced no checks: {title}"
    failed = [(name, detail) for name, ok, detail in results if not ok]
    status = "PASS" if not failed else "FAIL"
    print(f"[{status}] {title} ({len(results)} checks)")
    assert not failed, f"{title}: failed checks: {failed}"
