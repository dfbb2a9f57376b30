import io
import json
from unittest.mock import MagicMock

from src.conf import messages
from src.conf.config import CliConfig
from src.logic.formula import parse_dformulas, parse_question
from src.repository.defeaters import parse_assignment_text
from src.routes.agent import AgentRepl
from src.services.strategy import start_agent
from tests.conftest import INQUIRY_DEFEATERS

QUESTION = "?{p, q}"
FACTS = "~s | p, s | q"


def agent_args(defeaters_file, *extra):
    return ("agent", "--defeaters", defeaters_file, "--question", QUESTION, "--facts", FACTS) + extra


def test_agent_stream_file(run_cli, defeaters_file, tmp_path):
    stream = tmp_path / "inquiry.facts"
    stream.write_text("s\np\n", encoding="utf-8")
    code, out, _ = run_cli(*agent_args(defeaters_file, "--stream", str(stream)))
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("[0] subquestion: ?{s, ~s} from ")
    assert lines[1:] == [
        "[1] fact: s",
        "[1] subquestion-resolved: ?{s, ~s} by s",
        "[1] answered: p",
        "[1] status: answered",
    ]


def test_agent_without_stream(run_cli, defeaters_file):
    code, out, _ = run_cli(*agent_args(defeaters_file))
    assert code == 0
    assert out.splitlines()[-1] == f"[0] status: {messages.STATUS_AWAITING}"


def test_agent_stdin_json(run_cli, defeaters_file, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("w\nr\n"))
    code, out, _ = run_cli(*agent_args(defeaters_file, "--format", "json", "--stream", "-"))
    assert code == 0
    events = [json.loads(line) for line in out.splitlines()]
    assert [event["event"] for event in events] == ["subquestion", "fact", "fact", "exception", "status"]
    assert events[3] == {"event": "exception", "detail": "{r}", "step": 2}
    assert events[-1]["detail"] == messages.STATUS_EXHAUSTED


def test_agent_exception_member(run_cli, defeaters_file, tmp_path):
    stream = tmp_path / "inquiry.facts"
    stream.write_text("w\n", encoding="utf-8")
    code, out, _ = run_cli(*agent_args(defeaters_file, "--exception", "{w}", "--stream", str(stream)))
    assert code == 0
    assert "[1] exception: {w}" in out.splitlines()


def test_agent_bad_exception_member(run_cli, defeaters_file):
    code, _, err = run_cli(*agent_args(defeaters_file, "--exception", "{}"))
    assert code == 2
    assert "Invalid exception member" in err


def test_agent_missing_stream(run_cli, defeaters_file):
    code, _, err = run_cli(*agent_args(defeaters_file, "--stream", "/nonexistent/stream.facts"))
    assert code == 2
    assert "Cannot read fact stream" in err


def test_agent_stream_and_repl_are_exclusive(run_cli, defeaters_file):
    code, _, _ = run_cli(*agent_args(defeaters_file, "--stream", "-", "--repl"))
    assert code == 2


def make_repl(lines):
    state = start_agent(parse_question(QUESTION), parse_dformulas(FACTS), parse_assignment_text(INQUIRY_DEFEATERS))
    read = MagicMock(side_effect=lines)
    out = MagicMock()
    return AgentRepl(state, CliConfig(), read=read, out=out), out


def printed(out):
    return [call.args[0] for call in out.call_args_list]


def test_repl_session():
    repl, out = make_repl(["w", ":facts", ":bogus", "p &", "", "p"])
    state = repl.run()
    lines = printed(out)
    assert lines[1] == messages.REPL_HELP
    assert "[1] fact: w" in lines
    assert "w" in lines
    assert f"{messages.UNKNOWN_METACOMMAND}: :bogus" in lines
    assert any(line.startswith("error: ") for line in lines)
    assert "[3] answered: p" in lines
    assert lines[-1] == "[3] status: answered"
    assert state.active == []


def test_repl_end_of_input():
    repl, out = make_repl([":active", EOFError()])
    repl.run()
    lines = printed(out)
    assert lines[2].startswith("?{s, ~s}  ")
    assert lines[-1] == f"[0] status: {messages.STATUS_AWAITING}"


def test_repl_quit():
    repl, out = make_repl([":quit", "p"])
    state = repl.run()
    assert len(state.active) == 1
    assert repl.read.call_count == 1


def test_agent_color(run_cli, defeaters_file, tmp_path):
    stream = tmp_path / "inquiry.facts"
    stream.write_text("p\n", encoding="utf-8")
    code, out, _ = run_cli(*agent_args(defeaters_file, "--color", "--stream", str(stream)))
    assert code == 0
    lines = out.splitlines()
    assert "\033[92m[1] answered: p\033[0m" in lines
    assert "[1] fact: p" in lines
