from dataclasses import dataclass
from typing import Iterator, Tuple, Union


def is_variable(token: str) -> bool:
    return token.startswith("?")


@dataclass(frozen=True)
class Literal:
    predicate: str
    args: Tuple[str, ...]

    def to_text(self, indent: int = 0) -> str:
        return " " * indent + "(" + " ".join((self.predicate,) + self.args) + ")"


@dataclass(frozen=True)
class Not:
    child: 'Formula'

    def to_text(self, indent: int = 0) -> str:
        return " " * indent + "(not " + self.child.to_text().lstrip() + ")"


@dataclass(frozen=True)
class And:
    children: Tuple['Formula', ...] = ()

    def to_text(self, indent: int = 0) -> str:
        pad = " " * indent
        if not self.children:
            return pad + "(and)"
        inner = "\n".join(child.to_text(indent + 2) for child in self.children)
        return f"{pad}(and\n{inner})"


@dataclass(frozen=True)
class Forall:
    """Universal quantifier.

    `category` is either a category name of the universe, or a bound variable
    (``?cupboard``) meaning "every entity initially inside that entity".
    """
    variable: str
    category: str
    body: 'Formula'

    @property
    def over_containment(self) -> bool:
        return is_variable(self.category)

    def to_text(self, indent: int = 0) -> str:
        pad = " " * indent
        sep = "in" if self.over_containment else "-"
        return f"{pad}(forall ({self.variable} {sep} {self.category})\n{self.body.to_text(indent + 2)})"


Formula = Union[Forall, And, Not, Literal]


@dataclass(frozen=True)
class GoalSpec:
    root: Formula

    def format(self) -> str:
        return self.root.to_text()

    def literals(self) -> Iterator[Literal]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, Literal):
                yield node
            elif isinstance(node, Not):
                stack.append(node.child)
            elif isinstance(node, And):
                stack.extend(reversed(node.children))
            else:
                stack.append(node.body)

    def __str__(self):
        return self.format()
