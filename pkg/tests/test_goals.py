import numpy as np
import pytest

from SkillComposer.Exceptions import (ArityMismatchError, ContainmentError, GoalSyntaxError, GroundingError,
                                      SymbolicStateError, UnboundVariableError, UnknownCategoryError, UnknownEntityError,
                                      UnknownPredicateError, VariableRebindingError)
from SkillComposer.Goals import (DEFAULT_PREDICATES, declare, evaluate, format_goal, format_symbolic_state,
                                 ground_quantifiers, interpret, parse_goal, read_symbolic_state, resolve_constant,
                                 unsatisfied_literals)
from SkillComposer.Goals.GoalObjects import And, Forall, GoalSpec, GroundedGoal, Literal, Not, SymbolicState, lit

UNIVERSE = {"cupboards": ("c1",), "drawers": ("d1",), "buckets": ("b1",), "objects": ("o1", "o2", "o3"),
            "cloths": ("cloth1",)}
CONTAINMENT = {"o1": "c1", "o2": "c1", "o3": "d1", "cloth1": "c1"}


class TestParser:
    def test_cleaning_kitchen_structure(self, goal_text):
        goal = parse_goal(goal_text)
        assert isinstance(goal.root, And)
        top = goal.root.children
        assert [(node.variable, node.category) for node in top] == [("?c", "cupboards"), ("?d", "drawers")]
        inner = [child for child in top[0].body.children if isinstance(child, Forall)]
        assert len(inner) == 1 and inner[0].over_containment and inner[0].category == "?c"
        assert {literal.predicate for literal in goal.literals()} == {"IN", "OPENED", "DUSTY"}

    def test_empty_and(self):
        goal = parse_goal("(AND)")
        assert goal.root == And(())

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatchError):
            parse_goal("(IN obj)")

    def test_unknown_predicate(self):
        with pytest.raises(UnknownPredicateError):
            parse_goal("(SHINY c1)")

    def test_unbound_variable(self):
        with pytest.raises(UnboundVariableError):
            parse_goal("(forall (?c - cupboards) (IN ?o ?c))")

    def test_unbound_containment_variable(self):
        with pytest.raises(UnboundVariableError):
            parse_goal("(forall (?o in ?c) (IN ?o bucket))")

    def test_rebinding(self):
        with pytest.raises(VariableRebindingError):
            parse_goal("(forall (?c - cupboards) (forall (?c - drawers) (OPENED ?c)))")

    @pytest.mark.parametrize("text, line, column", [
        ("(and (OPENED c1)", 1, 1),
        ("(and)\n  )", 2, 3),
        ("", 1, 1),
        ("(and) (and)", 1, 7),
    ])
    def test_syntax_error_position(self, text, line, column):
        with pytest.raises(GoalSyntaxError) as info:
            parse_goal(text)
        assert (info.value.line, info.value.column) == (line, column)

    def test_comments_and_case(self):
        goal = parse_goal("; comment\n(AND (not (opened c1)) ; trailing\n)")
        assert goal.root == And((Not(Literal("OPENED", ("c1",))),))

    def test_declared_predicate(self):
        vocabulary = declare(DEFAULT_PREDICATES, "wet", 1)
        assert parse_goal("(WET cloth1)", vocabulary).root == Literal("WET", ("cloth1",))

    def test_round_trip(self, goal_text):
        goal = parse_goal(goal_text)
        assert parse_goal(format_goal(goal)) == goal


class TestGrounding:
    def test_cleaning_kitchen_literals(self, goal_text):
        grounded = ground_quantifiers(parse_goal(goal_text), UNIVERSE, CONTAINMENT)
        assert list(grounded) == [
            lit("DUSTY", "c1", positive=False),
            lit("IN", "cloth1", "b1"),
            lit("IN", "o1", "b1"),
            lit("IN", "o2", "b1"),
            lit("IN", "o3", "b1"),
            lit("OPENED", "c1", positive=False),
            lit("OPENED", "d1", positive=False),
        ]

    def test_empty_universe(self, goal_text):
        assert len(ground_quantifiers(parse_goal(goal_text), {}, {})) == 0

    def test_unknown_category(self):
        with pytest.raises(UnknownCategoryError):
            ground_quantifiers(parse_goal("(forall (?s - sinks) (OPENED ?s))"), UNIVERSE, CONTAINMENT)

    def test_containment_outside_universe(self, goal_text):
        with pytest.raises(ContainmentError):
            ground_quantifiers(parse_goal(goal_text), UNIVERSE, {"o1": "c9"})

    def test_contained_entity_need_not_be_listed(self):
        goal = parse_goal("(forall (?c - cupboards) (forall (?o in ?c) (IN ?o bucket)))")
        grounded = ground_quantifiers(goal, UNIVERSE, {"sponge9": "c1"})
        assert list(grounded) == [lit("IN", "sponge9", "b1")]

    def test_negated_quantifier_rejected(self):
        with pytest.raises(GroundingError):
            ground_quantifiers(parse_goal("(not (forall (?c - cupboards) (OPENED ?c)))"), UNIVERSE, CONTAINMENT)

    def test_idempotent(self, goal_text):
        grounded = ground_quantifiers(parse_goal(goal_text), UNIVERSE, CONTAINMENT)
        assert ground_quantifiers(grounded.as_goal_spec(), UNIVERSE, CONTAINMENT) == grounded

    def test_resolve_constant(self):
        assert resolve_constant("bucket", UNIVERSE) == "b1"
        assert resolve_constant("o2", UNIVERSE) == "o2"
        with pytest.raises(UnknownEntityError):
            resolve_constant("object", UNIVERSE)
        with pytest.raises(UnknownEntityError):
            resolve_constant("sink", UNIVERSE)


class TestEvaluation:
    def test_empty_goal_true(self):
        assert evaluate(GroundedGoal(), SymbolicState([("OPENED", ("c1",))], UNIVERSE))

    def test_negative_literal(self):
        state = SymbolicState([("OPENED", ("c1",))], UNIVERSE)
        assert not evaluate(GroundedGoal([lit("OPENED", "c1", positive=False)]), state)

    def test_terminal_state(self, goal_text):
        grounded = ground_quantifiers(parse_goal(goal_text), UNIVERSE, CONTAINMENT)
        facts = [("IN", (o, "b1")) for o in ("o1", "o2", "o3", "cloth1")]
        assert evaluate(grounded, SymbolicState(facts, UNIVERSE))
        assert not evaluate(grounded, SymbolicState(facts + [("DUSTY", ("c1",))], UNIVERSE))

    def test_unsatisfied_literals(self):
        goal = GroundedGoal([lit("IN", "o1", "b1"), lit("OPENED", "c1", positive=False)])
        opened = SymbolicState([("OPENED", ("c1",))], UNIVERSE)
        assert unsatisfied_literals(goal, opened) == list(goal)
        partial = SymbolicState([("OPENED", ("c1",)), ("IN", ("o1", "b1"))], UNIVERSE)
        assert unsatisfied_literals(goal, partial) == [lit("OPENED", "c1", positive=False)]
        done = SymbolicState([("IN", ("o1", "b1"))], UNIVERSE)
        assert unsatisfied_literals(goal, done) == []

    def test_unknown_entity(self):
        with pytest.raises(UnknownEntityError):
            evaluate(GroundedGoal([lit("OPENED", "c7")]), SymbolicState([], UNIVERSE))


class TestSymbolicState:
    def test_both_signs_rejected(self):
        with pytest.raises(SymbolicStateError):
            SymbolicState([("OPENED", ("c1",))], UNIVERSE, negatives=[("OPENED", ("c1",))])

    def test_entity_outside_universe(self):
        with pytest.raises(SymbolicStateError):
            SymbolicState([("OPENED", ("c9",))], UNIVERSE)

    def test_state_file_round_trip(self):
        state = SymbolicState([("DUSTY", ("c1",)), ("IN", ("o1", "c1"))], UNIVERSE)
        parsed, containment = read_symbolic_state(format_symbolic_state(state, CONTAINMENT))
        assert parsed == state
        assert containment == CONTAINMENT


# random formulas for the grounding/interpreter agreement and the printer fixpoint

PREDICATES = {"OPENED": 1, "DUSTY": 1, "HOLDING": 1, "ONFLOOR": 1, "IN": 2}
ENTITIES = [e for members in UNIVERSE.values() for e in members]


def random_literal(rng, scope):
    predicate = list(PREDICATES)[rng.integers(len(PREDICATES))]
    names = list(scope) + ENTITIES + ["bucket"]
    args = tuple(names[rng.integers(len(names))] for _ in range(PREDICATES[predicate]))
    node = Literal(predicate, args)
    return Not(node) if rng.random() < 0.5 else node


def random_formula(rng, scope=(), depth=0):
    choice = int(rng.integers(4)) if depth < 3 else 3
    variable = f"?v{depth}"
    if choice == 0:
        category = list(UNIVERSE)[rng.integers(len(UNIVERSE))]
        return Forall(variable, category, random_formula(rng, scope + (variable,), depth + 1))
    if choice == 1 and scope:
        container = scope[rng.integers(len(scope))]
        return Forall(variable, container, random_formula(rng, scope + (variable,), depth + 1))
    if choice == 2:
        return And(tuple(random_formula(rng, scope, depth + 1) for _ in range(rng.integers(0, 4))))
    return random_literal(rng, scope)


def random_state(rng):
    atoms = [(p, (a,)) for p in ("OPENED", "DUSTY", "HOLDING", "ONFLOOR") for a in ENTITIES]
    atoms += [("IN", (a, b)) for a in ENTITIES for b in ENTITIES]
    return SymbolicState([atom for atom in atoms if rng.random() < 0.3], UNIVERSE)


def test_grounded_evaluation_matches_interpreter():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        goal = GoalSpec(random_formula(rng))
        state = random_state(rng)
        grounded = ground_quantifiers(goal, UNIVERSE, CONTAINMENT)
        assert evaluate(grounded, state) == interpret(goal, state, CONTAINMENT), format_goal(goal)
        assert evaluate(grounded, state) == (unsatisfied_literals(grounded, state) == [])


def test_printer_fixpoint():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        goal = GoalSpec(random_formula(rng))
        printed = format_goal(goal)
        reparsed = parse_goal(printed)
        assert reparsed == goal
        assert format_goal(reparsed) == printed
