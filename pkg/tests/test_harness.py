import pytest

from hopfblocks import catalog, harness
from hopfblocks.harness import (
    Check,
    PreconditionError,
    TheoremReport,
    verify_excision,
    verify_johnson,
    verify_nonseparating,
    verify_prop_order,
    verify_separating,
    verify_torelli,
    verify_zg,
)


def _trivially_ribboned_z2():
    h = catalog.group_algebra(catalog.cyclic_group(2))
    h.r_matrix = catalog.trivial_r_matrix(h)
    h.ribbon = list(h.unit)
    assert h.validate().passed
    return h


def test_prop_order_small_doubles():
    for name, n in (("double:Z2", 2), ("double:Z3", 3)):
        check = verify_prop_order(catalog.get(name))
        assert check.passed
        assert f"Finite({n})" in check.rhs


def test_nonseparating_small():
    for name in ("double:Z2", "double:Z3"):
        checks = verify_nonseparating(catalog.get(name), 2)
        assert all(c.passed for c in checks)


def test_nonseparating_gate_refuses_nonfactorizable():
    h = _trivially_ribboned_z2()
    with pytest.raises(PreconditionError) as err:
        verify_nonseparating(h, 1)
    assert err.value.code == "FactorizableRequired"


def test_nonseparating_gate_refuses_missing_ribbon():
    with pytest.raises(PreconditionError) as err:
        verify_nonseparating(catalog.get("double:sweedler"), 1)
    assert err.value.code == "RibbonRequired"


def test_nonseparating_skips_beyond_cap():
    checks = verify_nonseparating(catalog.get("double:Z3"), 3)  # default cap is 2
    assert checks[-1].status == "skipped"
    assert all(c.passed for c in checks[:-1])


def test_separating_small():
    assert verify_separating(catalog.get("double:Z2"), 1, 1).passed
    assert verify_separating(catalog.get("double:Z3"), 1, 1).passed
    assert verify_separating(catalog.get("double:Z2"), 1, 2).passed


def test_johnson_positive_and_negative():
    assert verify_johnson(catalog.get("double:Z2")).passed
    check = verify_johnson(catalog.get("double:Z3"))
    assert check.passed


def test_torelli_cases():
    for name in ("double:Z2", "double:Z3", "double:S3", "double:sweedler"):
        assert verify_torelli(catalog.get(name)).passed, name


def test_torelli_trivial_r():
    h = _trivially_ribboned_z2()
    assert verify_torelli(h).passed


def test_zg_z2():
    check = verify_zg(catalog.get("double:Z2"), 2, 4)
    assert check.passed
    assert "25" in check.lhs  # |2Z^2 within [-4,4]^2| = 5*5


def test_zg_genus_one():
    check = verify_zg(catalog.get("double:Z3"), 1, 6)
    assert check.passed


def test_excision_small():
    for name in ("double:Z2", "double:Z3"):
        for g in (1, 2):
            assert verify_excision(catalog.get(name), g).passed


def test_run_all_gates_sweedler_double():
    report = harness.run_all(catalog.get("double:sweedler"), max_genus=1, window=2)
    statuses = {c.name: c.status for c in report.checks}
    assert statuses["torelli-criterion"] == "pass"
    assert any(s == "gated" for s in statuses.values())
    assert not report.has_failures


def test_report_json_and_table():
    report = TheoremReport("X", [Check("a", "s", lhs="1", rhs="1", status="pass")])
    doc = report.to_json()
    assert doc["report_version"] == 1
    assert doc["passed"]
    table = report.to_table()
    assert "a" in table and "PASS" in table


def test_skipped_is_not_passed_semantics():
    report = TheoremReport("X", [Check("a", "s", status="skipped", detail="cap")])
    assert report.passed  # no failures
    assert not report.checks[0].passed  # but the check itself did not pass
