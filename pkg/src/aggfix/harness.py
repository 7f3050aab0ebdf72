"""Deterministic test-case generators.

Randomness comes from a self-contained SplitMix64 stream so that a seed
identifies the same program on any platform or implementation.  The
scheme, fully specified:

* state: 64-bit unsigned; seeding stores ``seed mod 2**64``.
* next_u64: state += 0x9E3779B97F4A7C15 (mod 2**64), then the output is
  mix64(state) where mix64(z) is z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
  z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31 (all mod 2**64).
* below(n): next_u64() mod n (the modulo bias is irrelevant at the tiny
  ranges used here).
* split(): a child stream seeded with next_u64(); parent and child then
  advance independently.

Generated programs are ground except for the grouped and local
variables inside aggregate patterns, use integer constants 1..n, and
render/parse round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    AGGREGATE_FUNCTIONS,
    COMPARISON_OPS,
    AggregateAtom,
    Atom,
    Program,
    Rule,
    SetExpr,
    Var,
    atom_universe,
    make_program,
)
from .solutions import ScpInstance, SolutionPair, make_subset_sum_instance

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB


def mix64(z: int) -> int:
    z &= _MASK
    z ^= z >> 30
    z = (z * _MIX_A) & _MASK
    z ^= z >> 27
    z = (z * _MIX_B) & _MASK
    z ^= z >> 31
    return z


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        return mix64(self._state)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive range")
        return self.next_u64() % n

    def randint(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def chance(self, permille: int) -> bool:
        return self.below(1000) < permille

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


_PRED_NAMES = "pqrstuvw"


@dataclass(frozen=True)
class GenParams:
    seed: int
    num_predicates: int = 3
    max_arity: int = 1
    num_constants: int = 3
    num_rules: int = 6
    max_body_atoms: int = 3
    aggregate_permille: int = 400
    negation_permille: int = 300
    allowed_functions: tuple[str, ...] = AGGREGATE_FUNCTIONS
    allowed_ops: tuple[str, ...] = COMPARISON_OPS


def _predicate_name(index: int) -> str:
    if index < len(_PRED_NAMES):
        return _PRED_NAMES[index]
    return f"p{index}"


def _random_atom(rng: SplitMix64, signature, constants) -> Atom:
    name, arity = rng.choice(signature)
    args = tuple(rng.choice(constants) for _ in range(arity))
    return Atom(name, args)


def _random_aggregate(rng: SplitMix64, signature, constants, g: GenParams):
    candidates = [(n, a) for n, a in signature if a >= 1]
    if not candidates:
        return None
    name, arity = rng.choice(candidates)
    grouped_at = rng.below(arity)
    grouped = Var("X")
    multiset = arity >= 2 and rng.chance(500)
    args: list = []
    local_vars: list[Var] = []
    for position in range(arity):
        if position == grouped_at:
            args.append(grouped)
        elif multiset and rng.chance(500):
            v = Var(f"Z{len(local_vars) + 1}")
            local_vars.append(v)
            args.append(v)
        else:
            args.append(rng.choice(constants))
    expr = SetExpr(multiset, grouped, tuple(local_vars), Atom(name, tuple(args)))
    func = rng.choice(g.allowed_functions)
    op = rng.choice(g.allowed_ops)
    if func == "sum":
        bound = rng.randint(-2, sum(constants) + 2)
    elif func == "count":
        bound = rng.randint(-1, len(constants) + 1)
    else:
        bound = rng.randint(-1, max(constants) + 1)
    return AggregateAtom(func, expr, op, bound)


def generate_program(g: GenParams) -> Program:
    """Deterministic program for the given parameters.

    The same GenParams always yields the same Program, and the result
    parses back from its own rendering unchanged.
    """
    rng = SplitMix64(g.seed)
    sig_rng = rng.split()
    rule_rng = rng.split()
    signature = tuple(
        (_predicate_name(i), sig_rng.below(g.max_arity + 1))
        for i in range(g.num_predicates)
    )
    constants = tuple(range(1, g.num_constants + 1))
    rules = []
    for _ in range(g.num_rules):
        head = _random_atom(rule_rng, signature, constants)
        pos: list[Atom] = []
        neg: list[Atom] = []
        agg: list[AggregateAtom] = []
        for _ in range(rule_rng.below(g.max_body_atoms + 1)):
            atom = _random_atom(rule_rng, signature, constants)
            if rule_rng.chance(g.negation_permille):
                neg.append(atom)
            else:
                pos.append(atom)
        if rule_rng.chance(g.aggregate_permille):
            aggregate = _random_aggregate(rule_rng, signature, constants, g)
            if aggregate is not None:
                agg.append(aggregate)
        rules.append(Rule(head, tuple(pos), tuple(neg), tuple(agg)))
    return make_program(rules, extra_constants=constants)


def generate_scp_instance(g: GenParams) -> ScpInstance:
    """Deterministic solution-checking instance.

    Half of the seeds produce a subset-sum embedding over non-negative
    values; the rest draw a random aggregate atom over a small integer
    universe together with a random disjoint pair, covering every
    function and operator over time.
    """
    rng = SplitMix64(g.seed)
    if rng.chance(500):
        values = frozenset(rng.below(50) for _ in range(rng.randint(0, 8)))
        return make_subset_sum_instance(values, rng.randint(0, 60))

    arity = 2 if rng.chance(300) else 1
    if arity == 1:
        constants = frozenset(
            rng.randint(-10, 10) for _ in range(rng.randint(1, 8))
        )
    else:
        constants = frozenset(
            rng.randint(-3, 3) for _ in range(rng.randint(1, 3))
        )
    grouped = Var("X")
    if arity == 1:
        expr = SetExpr(False, grouped, (), Atom("q", (grouped,)))
    else:
        local = Var("Z1")
        expr = SetExpr(True, grouped, (local,), Atom("q", (grouped, local)))
    program = Program(
        rules=(), constants=constants, predicates=frozenset({("q", arity)})
    )
    func = rng.choice(AGGREGATE_FUNCTIONS)
    op = rng.choice(COMPARISON_OPS)
    bound = rng.randint(-12, 12)
    atom = AggregateAtom(func, expr, op, bound)
    universe = atom_universe(atom, program)
    p_part, n_part = set(), set()
    for a in universe:
        slot = rng.below(3)
        if slot == 1:
            p_part.add(a)
        elif slot == 2:
            n_part.add(a)
    return ScpInstance(
        program, atom, SolutionPair(frozenset(p_part), frozenset(n_part))
    )
