from .OperatorSchema import (WILDCARD, GroundedOperator, OperatorSchema, covers_all_skills, default_schemas,
                             entity_key, ground_operators)
from .SymbolicPlanner import Plan, plan, validate_plan
from .StateGrounder import (DetectorGrounder, OracleGrounder, complete_believed_containment, ground_state,
                            grounding_queries)
from .Executor import (FAILURE_TAGS, ActivityBudgets, ActivityOutcome, SkillResult, execute_activity, execute_skill,
                       inspect_failures)
