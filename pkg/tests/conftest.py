import pytest

import main
from src.logic.sequent import DefeaterAssignment
from src.repository.defeaters import parse_assignment_text
from src.services.prover import SearchBounds

INQUIRY_DEFEATERS = """\
# axiom defeater sets
s : {r}
p : {t}
q : {u, v}
"""

INQUIRY_SEQUENT = "?{p, q}, ~s | p, s | q |- [{r}, {t}, {u, v}, {p}, {q}] ?{s, ~s}"


@pytest.fixture(scope="module")
def assignment() -> DefeaterAssignment:
    return parse_assignment_text(INQUIRY_DEFEATERS)


@pytest.fixture(scope="module")
def bounds() -> SearchBounds:
    return SearchBounds()


@pytest.fixture(scope="module")
def defeaters_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("defeaters") / "inquiry.defeaters"
    path.write_text(INQUIRY_DEFEATERS, encoding="utf-8")
    return str(path)


@pytest.fixture
def run_cli(capsys, monkeypatch):
    monkeypatch.delenv("DEFEATERS_FILE", raising=False)
    monkeypatch.delenv("OUTPUT_FORMAT", raising=False)
    monkeypatch.delenv("COLOR", raising=False)

    def run(*argv):
        code = main.main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
