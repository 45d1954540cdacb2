import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from kam.cli import ParseError, main, parse_expression
from kam.core import HAT_U, K, TILDE_K, TILDE_U, U, Element, render


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_examples():
    p = 3
    assert parse_expression("e6 e0", HAT_U, p) == Element.monomial((6, 0), HAT_U, p)
    assert parse_expression("2 e0 e2 + e6 e0", HAT_U, p) == Element.from_pairs(
        [((0, 2), 2), ((6, 0), 1)], HAT_U, p
    )
    assert parse_expression("d1 d3", U, p) == Element.monomial((1, 3), U, p)
    assert parse_expression("-2*e1 e2 - e3", HAT_U, p) == Element.from_pairs([((1, 2), -2), ((3,), -1)], HAT_U, p)
    assert parse_expression("e4 e2", U, p) == Element.monomial((2, 1), U, p)
    assert parse_expression("0", HAT_U, p) == 0
    assert parse_expression("1", HAT_U, p) == Element.one(HAT_U, p)


def test_illegal_subscripts_warn(caplog):
    assert parse_expression("e3 + e2", TILDE_U, 3) == Element.monomial((2,), TILDE_U, 3)
    assert "read as zero" in caplog.text
    assert parse_expression("e-2 e3", HAT_U, 3) == 0
    assert parse_expression("e3", U, 3) == 0


@pytest.mark.parametrize(
    "src, pos",
    [("e2 +", 4), ("e2 ++ e4", 4), ("e2 x", 3), ("", 0), ("2 *", 3), ("e2 * e4", 3)],
)
def test_parse_errors_carry_positions(src, pos):
    with pytest.raises(ParseError) as exc:
        parse_expression(src, HAT_U, 3)
    assert exc.value.pos == pos


def test_d_outside_plain_is_error():
    with pytest.raises(ParseError):
        parse_expression("d1", TILDE_K, 3)


elements = st.dictionaries(
    st.lists(st.integers(0, 20), max_size=3).map(tuple), st.integers(-10, 10), max_size=5
)


@given(elements, st.sampled_from([HAT_U, TILDE_K, K]), st.sampled_from([3, 5]))
def test_render_round_trip(terms, flavor, p):
    x = Element(terms, flavor, p)
    assert parse_expression(render(x), flavor, p) == x


def test_normalize_command(capsys):
    code, out, _ = run(capsys, "normalize", "--prime", "3", "--flavor", "tildeK", "e6 e0")
    assert code == 0 and out.strip() == "e0 e2"
    code, out, _ = run(capsys, "normalize", "--flavor", "tildeK", "--method", "oracle", "e6 e0")
    assert out.strip() == "e0 e2"
    code, out, _ = run(capsys, "normalize", "--flavor", "hatU", "e6 e0 + e6 e0")
    assert out.strip() == "2 e6 e0"


def test_json_schema_and_determinism(capsys):
    argv = ["--format", "json", "normalize", "--flavor", "tildeK", "e6 e0 + e4"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["prime"] == 3 and data["flavor"] == "tildeK" and data["command"] == "normalize"
    assert data["input"]["expression"] == "e6 e0 + e4"
    # ordered by length, then degree, then subscripts
    assert data["result"] == [{"coeff": 1, "monomial": [4]}, {"coeff": 1, "monomial": [0, 2]}]


def test_basis_and_primitives(capsys):
    code, out, _ = run(capsys, "basis", "--length", "2", "--topdeg", "16", "--format", "json")
    data = json.loads(out)
    assert data["dimension"] == 1 and data["result"] == [{"coeff": 1, "monomial": [2, 2]}]
    code, out, _ = run(capsys, "primitives", "--length", "2", "--max-topdeg", "40")
    assert out.splitlines() == ["grouplike: e0 e0", "t=12: e0 e2", "t=16: e2 e2"]


def test_nishida_and_steenrod(capsys):
    _, out, _ = run(capsys, "nishida", "--d", "5", "e2 e2")
    assert out.strip() == "2 e0 e2"
    _, out, _ = run(capsys, "nishida", "--flavor", "hatU", "--d", "0,0", "e9 e18")
    assert out.strip() == "e1 e2"
    _, out, _ = run(capsys, "steenrod", "--j", "1", "--generator", "c1", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert data["result"] == [{"coeff": 1, "monomial": [2, 2]}] and data["topdeg"] == 16


def test_dual_invariants_commute(capsys):
    _, out, _ = run(capsys, "dual", "--n", "2", "--generator", "c1")
    assert "sigma: (e0 e2)* + (e6 e0)*" in out
    _, out, _ = run(capsys, "invariants", "--group", "upper-pm1", "--vars", "1", "--max-deg", "8")
    assert out.splitlines() == ["t=0: 1", "t=2: 0", "t=4: 1", "t=6: 0", "t=8: 1"]
    code, out, _ = run(capsys, "commute", "--n", "2", "--max-topdeg", "40")
    assert code == 0 and "square commutes" in out


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "eta")
    assert code == 0 and out.strip().endswith("all properties passed")
    code, out, _ = run(capsys, "verify", "commute", "--format", "json")
    assert json.loads(out)["passed"] is True


def test_verify_failure_exit_code(capsys, monkeypatch):
    import kam.checks as checks

    monkeypatch.setitem(checks.SUITES, "eta", lambda p, **_: [checks.CheckResult("forced", False, "x", 0.0)])
    code, out, _ = run(capsys, "verify", "eta")
    assert code == 1 and "FAIL" in out


def test_usage_errors(capsys):
    assert run(capsys, "normalize", "d1")[0] == 2
    assert run(capsys, "normalize", "--prime", "4", "e2")[0] == 2
    assert run(capsys, "verify", "nonsense")[0] == 2
    assert run(capsys, "steenrod", "--j", "1", "--generator", "q", "--n", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["basis", "--length", "2"])
    assert exc.value.code == 2


def test_resource_cap_exit_code(capsys, monkeypatch):
    import kam.quotient as q

    monkeypatch.setattr(q, "MAX_COMPONENT_DIM", 1)
    q._relation_space.cache_clear()
    try:
        code, _, err = run(capsys, "normalize", "--method", "oracle", "--prime", "7", "e12 e0 e6")
        assert code == 3 and "resource limit" in err
    finally:
        q._relation_space.cache_clear()


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "kam", "normalize", "e6 e0"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout.strip() == "e0 e2"
