import sys
from typing import Callable

from src.conf import messages
from src.conf.config import CliConfig
from src.logic.formula import FormulaSyntaxError, parse_dformula, parse_dformulas, parse_question
from src.logic.sequent import EMPTY, parse_defeater_members
from src.repository.facts import load_facts, read_facts
from src.routes.common import (EXIT_DEFEATED, EXIT_NOT_DERIVABLE, EXIT_OK, EXIT_USAGE, CommandError, assignment_for,
                               paint, parsed)
from src.schemas import TranscriptEvent
from src.services.strategy import (ANSWERED, ERROR, EXCEPTION, STATUS, AgentState, agent_step, finish_status, run_agent,
                                   start_agent)

EVENT_EXIT = {ANSWERED: EXIT_OK, EXCEPTION: EXIT_DEFEATED, ERROR: EXIT_NOT_DERIVABLE}


def event_text(event: TranscriptEvent) -> str:
    return f"[{event.step}] {event.event}: {event.detail}"


def print_events(config: CliConfig, events: list, out: Callable = print) -> None:
    for event in events:
        if config.output_format == "json":
            out(event.json())
        else:
            out(paint(config, event_text(event), EVENT_EXIT.get(event.event)))


class AgentRepl:
    """
    Line-oriented loop over an agent: each line is a fact or a metacommand.
    Input and output go through the given callables.
    """

    def __init__(self, state: AgentState, config: CliConfig, read: Callable = input, out: Callable = print):
        self.state = state
        self.config = config
        self.read = read
        self.out = out
        self.step = 0

    def _show_new(self, seen: int) -> None:
        print_events(self.config, self.state.log[seen:], self.out)

    def metacommand(self, command: str) -> bool:
        if command == ":quit":
            return False
        if command == ":facts":
            for fact in sorted(self.state.facts, key=str):
                self.out(str(fact))
        elif command == ":active":
            for inquiry in self.state.active:
                self.out(f"{inquiry.subquestion}  {inquiry.sequent}")
        elif command == ":help":
            self.out(messages.REPL_HELP)
        else:
            self.out(f"{messages.UNKNOWN_METACOMMAND}: {command}")
        return True

    def run(self) -> AgentState:
        self._show_new(0)
        if not self.state.active:
            return self.state
        self.out(messages.REPL_HELP)
        while self.state.active:
            try:
                line = self.read("> ").strip()
            except (EOFError, KeyboardInterrupt):
                break
            if not line:
                continue
            if line.startswith(":"):
                if not self.metacommand(line):
                    break
                continue
            self.step += 1
            try:
                fact = parse_dformula(line)
            except FormulaSyntaxError as err:
                self.out(f"error: {err}")
                continue
            seen = len(self.state.log)
            self.state, _ = agent_step(self.state, fact, self.step)
            self._show_new(seen)
        self.out(event_text(TranscriptEvent(event=STATUS, detail=finish_status(self.state), step=self.step)))
        return self.state


def cmd_agent(args, config: CliConfig) -> int:
    """
    The cmd_agent function runs the inquiry agent for a principal question,
    either over a fact stream (a file, or "-" for stdin) or interactively.

    :param args: Namespace: Holds question, facts, stream, repl and exception members
    :param config: CliConfig: Defeater file and output format
    :return: The exit code
    :doc-author: Trelent
    """
    principal = parsed(parse_question, args.question, "question")
    facts = parsed(parse_dformulas, args.facts, "facts")
    exceptions = EMPTY
    for member in args.exception:
        exceptions = exceptions | parsed(parse_defeater_members, member, "exception member")
    assignment = assignment_for(config)
    if args.repl:
        AgentRepl(start_agent(principal, facts, assignment, exceptions), config).run()
        return EXIT_OK
    if args.stream == "-":
        entries = read_facts(sys.stdin)
    elif args.stream:
        try:
            entries = load_facts(args.stream)
        except OSError as err:
            raise CommandError(EXIT_USAGE, f"Cannot read fact stream: {err.strerror}: {args.stream}")
    else:
        entries = []
    print_events(config, run_agent(principal, facts, assignment, entries, exceptions))
    return EXIT_OK


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser("agent", parents=parents, help="run the inquiry agent")
    parser.add_argument("--question", required=True, help='principal question, e.g. "?{p, q}"')
    parser.add_argument("--facts", default="", help="comma-separated initial facts")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--stream", metavar="FILE", help='fact stream, one d-wff per line; "-" reads stdin')
    source.add_argument("--repl", action="store_true", help="read facts interactively")
    parser.add_argument("--exception", action="append", default=[], metavar="MEMBER",
                        help='extra exception member, e.g. "{r}"')
    parser.set_defaults(handler=cmd_agent)
