import re
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import (ArityMismatchError, GoalSyntaxError, SymbolicStateError,
                                                 UnboundVariableError, UnknownPredicateError,
                                                 VariableRebindingError)
from .GoalObjects import And, Forall, Formula, GoalSpec, Literal, Not, SymbolicState, is_variable
from .Predicates import DEFAULT_PREDICATES, PredicateDecl

logger = Logger.get_logger(__name__)

_TOKEN_RE = re.compile(r"\s+|;[^\n]*|\(|\)|[^\s();]+")


class Token(NamedTuple):
    text: str
    line: int
    column: int


class SList(list):
    """Parenthesised group remembering where it opened."""

    def __init__(self, line: int, column: int):
        super().__init__()
        self.line = line
        self.column = column


SExpr = Union[Token, SList]


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:  # pragma: no cover - the pattern accepts every character
            raise GoalSyntaxError(f"Unexpected character {text[pos]!r}", line, pos - line_start + 1)
        value = match.group(0)
        if not value[0].isspace() and value[0] != ";":
            tokens.append(Token(value, line, pos - line_start + 1))
        for offset, char in enumerate(value):
            if char == "\n":
                line += 1
                line_start = pos + offset + 1
        pos = match.end()
    tokens.append(Token("", line, pos - line_start + 1))  # end of input
    return tokens


def read_sexprs(text: str) -> List[SExpr]:
    tokens = tokenize(text)
    stack: List[SList] = []
    top: List[SExpr] = []
    for token in tokens:
        if token.text == "":
            if stack:
                raise GoalSyntaxError("Unclosed '('", stack[-1].line, stack[-1].column)
            break
        if token.text == "(":
            group = SList(token.line, token.column)
            (stack[-1] if stack else top).append(group)
            stack.append(group)
        elif token.text == ")":
            if not stack:
                raise GoalSyntaxError("Unexpected ')'", token.line, token.column)
            stack.pop()
        else:
            if not stack:
                raise GoalSyntaxError(f"Unexpected atom {token.text!r} outside parentheses", token.line, token.column)
            stack[-1].append(token)
    return top


def _position(expr: SExpr) -> Tuple[int, int]:
    return expr.line, expr.column


class _GoalReader:
    def __init__(self, vocabulary: Mapping[str, PredicateDecl]):
        self.vocabulary = vocabulary

    def formula(self, expr: SExpr, scope: Tuple[str, ...]) -> Formula:
        if isinstance(expr, Token):
            raise GoalSyntaxError(f"Expected '(' but found {expr.text!r}", *_position(expr))
        if len(expr) == 0:
            raise GoalSyntaxError("Empty formula '()'", *_position(expr))
        head = expr[0]
        if not isinstance(head, Token):
            raise GoalSyntaxError("Formula must start with a keyword or predicate name", *_position(head))
        keyword = head.text.lower()
        if keyword == "forall":
            return self.forall(expr, scope)
        if keyword == "and":
            return And(tuple(self.formula(child, scope) for child in expr[1:]))
        if keyword == "not":
            if len(expr) != 2:
                raise GoalSyntaxError("'not' takes exactly one formula", *_position(expr))
            return Not(self.formula(expr[1], scope))
        return self.literal(expr, scope)

    def forall(self, expr: SList, scope: Tuple[str, ...]) -> Forall:
        if len(expr) != 3 or not isinstance(expr[1], SList):
            raise GoalSyntaxError("Expected (forall (?var - category) formula)", *_position(expr))
        binding = expr[1]
        if len(binding) != 3 or not all(isinstance(part, Token) for part in binding):
            raise GoalSyntaxError("Expected (?var - category) or (?var in ?container)", *_position(binding))
        variable, separator, domain = binding
        if not is_variable(variable.text) or len(variable.text) < 2:
            raise GoalSyntaxError(f"Quantified name {variable.text!r} must start with '?'", *_position(variable))
        if variable.text in scope:
            raise VariableRebindingError(
                f"Variable {variable.text} is already bound (line {variable.line}, column {variable.column})")

        sep = separator.text.lower()
        if sep == "-":
            if is_variable(domain.text):
                raise GoalSyntaxError("Category after '-' must be a name", *_position(domain))
        elif sep == "in":
            if not is_variable(domain.text):
                raise GoalSyntaxError("Container after 'in' must be a variable", *_position(domain))
            if domain.text not in scope:
                raise UnboundVariableError(
                    f"Variable {domain.text} is not bound (line {domain.line}, column {domain.column})")
        else:
            raise GoalSyntaxError(f"Expected '-' or 'in', found {separator.text!r}", *_position(separator))

        body = self.formula(expr[2], scope + (variable.text,))
        return Forall(variable.text, domain.text, body)

    def literal(self, expr: SList, scope: Tuple[str, ...]) -> Literal:
        head = expr[0]
        name = head.text.upper()
        decl = self.vocabulary.get(name)
        if decl is None:
            raise UnknownPredicateError(
                f"Unknown predicate {head.text!r} (line {head.line}, column {head.column})")
        args = []
        for arg in expr[1:]:
            if not isinstance(arg, Token):
                raise GoalSyntaxError("Predicate arguments must be names or variables", *_position(arg))
            if is_variable(arg.text) and arg.text not in scope:
                raise UnboundVariableError(f"Variable {arg.text} is not bound (line {arg.line}, column {arg.column})")
            args.append(arg.text)
        if len(args) != decl.arity:
            raise ArityMismatchError(
                f"{name} takes {decl.arity} argument(s), got {len(args)} (line {head.line}, column {head.column})")
        return Literal(name, tuple(args))


def parse_goal(text: str, vocabulary: Optional[Mapping[str, PredicateDecl]] = None) -> GoalSpec:
    """Parses goal-language source into a `GoalSpec`.

    The text must hold exactly one top-level formula, e.g.::

        (forall (?c - cupboards)
          (and (not (OPENED ?c))
               (forall (?o in ?c) (IN ?o bucket))))
    """
    exprs = read_sexprs(text)
    if len(exprs) != 1:
        if not exprs:
            end = tokenize(text)[-1]
            raise GoalSyntaxError("No formula found", end.line, end.column)
        raise GoalSyntaxError("Expected exactly one top-level formula", *_position(exprs[1]))
    reader = _GoalReader(vocabulary if vocabulary is not None else DEFAULT_PREDICATES)
    return GoalSpec(reader.formula(exprs[0], ()))


def format_goal(goal: GoalSpec) -> str:
    return goal.format()


def read_goal_file(path: str, vocabulary: Optional[Mapping[str, PredicateDecl]] = None) -> GoalSpec:
    with open(path, "r", encoding="utf-8") as f:
        goal = parse_goal(f.read(), vocabulary)
    logger.debug(f"Loaded goal from {path}")
    return goal


# symbolic state files: (universe (cat e...)...) (containment (e c)...) (facts (PRED e...)...)

def _section_items(section: SList, name: str) -> List[SList]:
    items = []
    for item in section[1:]:
        if not isinstance(item, SList) or not item or not all(isinstance(t, Token) for t in item):
            raise GoalSyntaxError(f"Malformed entry in ({name} ...)", *_position(item))
        items.append(item)
    return items


def read_symbolic_state(text: str, vocabulary: Optional[Mapping[str, PredicateDecl]] = None
                        ) -> Tuple[SymbolicState, Dict[str, str]]:
    """Reads a state file into a `SymbolicState` and the initial containment map."""
    vocabulary = vocabulary if vocabulary is not None else DEFAULT_PREDICATES
    universe: Dict[str, Tuple[str, ...]] = {}
    containment: Dict[str, str] = {}
    facts = []
    for section in read_sexprs(text):
        if not section or not isinstance(section[0], Token):
            raise GoalSyntaxError("Expected (universe ...), (containment ...) or (facts ...)", *_position(section))
        name = section[0].text.lower()
        if name == "universe":
            for item in _section_items(section, name):
                universe[item[0].text] = tuple(t.text for t in item[1:])
        elif name == "containment":
            for item in _section_items(section, name):
                if len(item) != 2:
                    raise GoalSyntaxError("Containment entries are (entity container)", *_position(item))
                containment[item[0].text] = item[1].text
        elif name == "facts":
            for item in _section_items(section, name):
                pred = item[0].text.upper()
                decl = vocabulary.get(pred)
                if decl is None:
                    raise UnknownPredicateError(f"Unknown predicate {item[0].text!r} (line {item.line})")
                if len(item) - 1 != decl.arity:
                    raise ArityMismatchError(f"{pred} takes {decl.arity} argument(s) (line {item.line})")
                facts.append((pred, tuple(t.text for t in item[1:])))
        else:
            raise GoalSyntaxError(f"Unknown section {section[0].text!r}", *_position(section[0]))

    state = SymbolicState(facts, universe)
    for entity, container in containment.items():
        if entity not in state.entities or container not in state.entities:
            raise SymbolicStateError(f"Containment ({entity} {container}) mentions an entity outside the universe")
    return state, containment


def format_symbolic_state(state: SymbolicState, containment: Mapping[str, str]) -> str:
    categories = " ".join(f"({category}{''.join(' ' + e for e in members)})"
                          for category, members in state.universe.items())
    lines = [f"(universe {categories})"]
    lines.append("(containment" + "".join(f" ({e} {c})" for e, c in sorted(containment.items())) + ")")
    lines.append("(facts" + "".join(f" ({l.predicate}{''.join(' ' + a for a in l.args)})"
                                    for l in state.literals()) + ")")
    return "\n".join(lines) + "\n"
