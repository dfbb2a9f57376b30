import json

from src.conf import messages


def test_parse_question(run_cli):
    code, out, _ = run_cli("parse", "?{~q,p}")
    assert code == 0
    assert out.splitlines() == ["?{p, ~q}", "grouping: ?{p, ~q}"]


def test_parse_shows_grouping(run_cli):
    code, out, _ = run_cli("parse", "p|q&r")
    assert code == 0
    assert out.splitlines() == ["p | q & r", "grouping: p | (q & r)"]


def test_parse_sequent(run_cli):
    code, out, _ = run_cli("parse", "p & q |- [{p}] r")
    assert code == 0
    assert out.splitlines()[0] == "p & q |- [{p}] r"


def test_parse_json(run_cli):
    code, out, _ = run_cli("parse", "--format", "json", "~(p & q)")
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "dformula"
    assert payload["tree"] == {"neg": {"and": [{"atom": "p"}, {"atom": "q"}]}}


def test_parse_sequent_json(run_cli):
    code, out, _ = run_cli("parse", "--format", "json", "p |- [{u, v}] ?{p, q}")
    payload = json.loads(out)
    assert payload["kind"] == "sequent"
    assert payload["tree"]["defeaters"] == [[{"atom": "u"}, {"atom": "v"}]]
    assert payload["tree"]["succedent"] == [{"question": [{"atom": "p"}, {"atom": "q"}]}]


def test_parse_error_points_at_position(run_cli):
    code, out, err = run_cli("parse", "p | ?{p, q}")
    assert code == 2
    assert out == ""
    assert messages.QUESTION_IN_DFORM in err
    assert err.splitlines()[-1] == "      ^"


def test_parse_incomplete(run_cli):
    code, _, err = run_cli("parse", "p &")
    assert code == 2
    assert "Invalid formula" in err


def test_parse_deep_nesting(run_cli):
    code, out, _ = run_cli("parse", "(" * 60 + "p" + ")" * 60)
    assert code == 0
    assert out.splitlines()[0] == "p"


def test_parse_nesting_too_deep(run_cli):
    code, _, err = run_cli("parse", "~" * 5000 + "p")
    assert code == 2
    assert messages.NESTING_TOO_DEEP in err
