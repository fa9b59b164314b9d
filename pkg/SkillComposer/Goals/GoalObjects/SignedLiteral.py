from typing import NamedTuple, Tuple

Atom = Tuple[str, Tuple[str, ...]]  # ("IN", ("o1", "b1"))


class SignedLiteral(NamedTuple):
    predicate: str
    args: Tuple[str, ...]
    positive: bool = True

    @property
    def atom(self) -> Atom:
        return self.predicate, self.args

    def negated(self) -> 'SignedLiteral':
        return SignedLiteral(self.predicate, self.args, not self.positive)

    def sort_key(self):
        return self.predicate, self.args, not self.positive

    def __str__(self):
        text = f"{self.predicate}({','.join(self.args)})"
        return text if self.positive else "¬" + text


def lit(predicate: str, *args: str, positive: bool = True) -> SignedLiteral:
    return SignedLiteral(predicate, tuple(args), positive)
