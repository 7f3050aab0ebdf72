"""Fixpoint answer sets of ground programs with aggregates.

The reduct of a program w.r.t. a candidate keeps the rules whose
negative body the candidate avoids and strips the negation, leaving
aggregates in place.  The consequence operator collects the heads of
reduct rules whose bodies are conditionally satisfied; it is monotone
for a fixed candidate, so iterating from the empty set climbs to a
least fixpoint in at most |herbrand base| steps.  A candidate is an
answer set exactly when it equals that least fixpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import LimitExceeded
from .evaluate import Interpretation, is_model
from .solutions import conditionally_satisfies
from .syntax import Program, Rule, herbrand_base, interpretation_key

DEFAULT_CANDIDATE_LIMIT = 1 << 20


@dataclass(frozen=True)
class ReductProgram:
    """Negation-free remainder of a program under a candidate."""

    rules: tuple[Rule, ...]


@dataclass(frozen=True)
class FixpointTrace:
    """Successive stages of the consequence iteration, from the empty
    set up to and including the first repeated stage."""

    stages: tuple[Interpretation, ...]

    @property
    def fixpoint(self) -> Interpretation:
        return self.stages[-1]

    @property
    def converged(self) -> bool:
        return len(self.stages) >= 2 and self.stages[-1] == self.stages[-2]

    @property
    def distinct_stages(self) -> tuple[Interpretation, ...]:
        if self.converged:
            return self.stages[:-1]
        return self.stages


def reduct(p: Program, m: Interpretation) -> ReductProgram:
    kept = tuple(
        Rule(r.head, r.pos, (), r.agg)
        for r in p.rules
        if not any(b in m for b in r.neg)
    )
    return ReductProgram(kept)


def _consequences(rules, m: Interpretation, i: Interpretation, p: Program):
    heads = set()
    for rule in rules:
        if rule.head in heads:
            continue
        if all(a in i for a in rule.pos) and all(
            conditionally_satisfies(i, m, c, p) for c in rule.agg
        ):
            heads.add(rule.head)
    return frozenset(heads)


def apply_consequence(
    p: Program, m: Interpretation, i: Interpretation
) -> Interpretation:
    """One application of the consequence operator for candidate ``m``."""
    return _consequences(reduct(p, m).rules, m, i, p)


def least_fixpoint(p: Program, m: Interpretation) -> FixpointTrace:
    rules = reduct(p, m).rules
    stages = [frozenset()]
    while True:
        nxt = _consequences(rules, m, stages[-1], p)
        stages.append(nxt)
        if nxt == stages[-2]:
            return FixpointTrace(tuple(stages))


def is_fixpoint_answer_set(
    p: Program, m: Interpretation
) -> tuple[bool, FixpointTrace]:
    trace = least_fixpoint(p, m)
    return trace.fixpoint == m, trace


def enumerate_answer_sets(
    p: Program, limit: int = DEFAULT_CANDIDATE_LIMIT
) -> tuple[Interpretation, ...]:
    """All fixpoint answer sets, in size-then-lexicographic order.

    Sweeps every subset of the herbrand base, so this is a desk-scale
    tool; candidates that are not models are skipped without running
    the fixpoint iteration (every answer set is a model).
    """
    base = herbrand_base(p)
    if 2 ** len(base) > limit:
        raise LimitExceeded(
            f"enumerating 2**{len(base)} candidates exceeds the budget of {limit}"
        )
    answers = []
    for size in range(len(base) + 1):
        for combo in itertools.combinations(base, size):
            m = frozenset(combo)
            if is_model(m, p) and is_fixpoint_answer_set(p, m)[0]:
                answers.append(m)
    return tuple(sorted(answers, key=interpretation_key))
