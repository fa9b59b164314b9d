from typing import Optional


class GoalLanguageError(Exception):
    pass

class GoalSyntaxError(GoalLanguageError):
    line: int
    column: int

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column

class UnknownPredicateError(GoalLanguageError):
    pass

class ArityMismatchError(GoalLanguageError):
    pass

class UnboundVariableError(GoalLanguageError):
    pass

class VariableRebindingError(GoalLanguageError):
    pass


class GroundingError(Exception):
    pass

class UnknownCategoryError(GroundingError):
    pass

class ContainmentError(GroundingError):
    pass

class UnknownEntityError(GroundingError):
    pass

class SymbolicStateError(Exception):
    pass


class SimulationError(Exception):
    pass

class RandomizationError(SimulationError):
    pass

class LayoutInfeasibleError(SimulationError):
    pass

class UnknownTargetError(SimulationError):
    pass


class ApproximationError(Exception):
    pass

class DimensionMismatchError(ApproximationError):
    pass

class NonFiniteError(ApproximationError):
    pass


class UnknownSkillError(Exception):
    pass

class MissingDetectorError(Exception):
    pass


class StoreError(Exception):
    path: Optional[str] = None

class CorruptFileError(StoreError):
    pass

class VersionMismatchError(StoreError):
    pass

class ManifestMismatchError(StoreError):
    pass

class DimensionInconsistencyError(StoreError):
    pass


class ConfigError(Exception):
    pass

class MissingArtifactError(Exception):
    pass
