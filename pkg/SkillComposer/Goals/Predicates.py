from typing import Dict, Mapping, NamedTuple


class PredicateDecl(NamedTuple):
    name: str
    arity: int
    doc: str = ""


DEFAULT_PREDICATES: Dict[str, PredicateDecl] = {
    "IN": PredicateDecl("IN", 2, "entity is inside a container or the bucket"),
    "OPENED": PredicateDecl("OPENED", 1, "container open fraction above threshold"),
    "DUSTY": PredicateDecl("DUSTY", 1, "cupboard dust coverage above threshold"),
    "HOLDING": PredicateDecl("HOLDING", 1, "entity is in the gripper"),
    "ONFLOOR": PredicateDecl("ONFLOOR", 1, "entity lies on the floor"),
}


def declare(vocabulary: Mapping[str, PredicateDecl], name: str, arity: int, doc: str = "") -> Dict[str, PredicateDecl]:
    """Returns a new vocabulary extended with one predicate."""
    extended = dict(vocabulary)
    extended[name.upper()] = PredicateDecl(name.upper(), arity, doc)
    return extended
