"""Shared fixtures: canonical programs and a CLI driver."""

import contextlib
import io

import pytest

from aggfix.syntax import ground_program, parse_program

# A fact guarded by a sum over its own predicate: unique answer set
# {p(1), p(2), p(3)} because deriving p(5) would need q, and q needs
# the sum to exceed 10 already.
GUARD_TEXT = """\
p(1). p(2). p(3).
p(5) :- q.
q :- sum{X : p(X)} > 10.
"""

# An even negation loop feeding a count aggregate: two answer sets,
# {q} and {p(a), p(b)}.
CHOICE_TEXT = """\
p(a) :- count{X : p(X)} > 0.
p(b) :- not q.
q :- not p(b).
"""

# A positive cycle through an aggregate that is satisfied vacuously:
# no fixpoint answer set, but {p(1), p(-1)} survives other semantics.
CYCLE_TEXT = """\
p(1) :- sum{X : p(X)} >= 0.
p(-1) :- p(1).
p(1) :- p(-1).
"""


@pytest.fixture(scope="session")
def guard_program():
    return ground_program(parse_program(GUARD_TEXT))


@pytest.fixture(scope="session")
def choice_program():
    return ground_program(parse_program(CHOICE_TEXT))


@pytest.fixture(scope="session")
def cycle_program():
    return ground_program(parse_program(CYCLE_TEXT))


@pytest.fixture(scope="session")
def program_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("programs")
    paths = {}
    for name, text in (
        ("guard", GUARD_TEXT),
        ("choice", CHOICE_TEXT),
        ("cycle", CYCLE_TEXT),
        ("empty", ""),
    ):
        path = root / f"{name}.lp"
        path.write_text(text)
        paths[name] = str(path)
    return paths


@pytest.fixture
def run_cli():
    """Run the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(*argv):
        from aggfix.cli import main

        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    return run
