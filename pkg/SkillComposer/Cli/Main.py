import argparse
import sys
from typing import List, Optional

from SkillComposer import Logger
from SkillComposer.Exceptions.Exceptions import (ConfigError, GoalLanguageError, GroundingError, MissingArtifactError,
                                                 RandomizationError, StoreError, SymbolicStateError,
                                                 UnknownSkillError)
from SkillComposer.Skills.Hyperparameters import BOOTSTRAP_GATES
from .Commands import cmd_ablate, cmd_eval_skill, cmd_plan, cmd_run_activity, cmd_train_skill

logger = Logger.get_logger(__name__)

EXIT_OK = 0
EXIT_NO_PLAN = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_MISSING_ARTIFACT = 4


def _run_flags() -> argparse.ArgumentParser:
    """Flags every experiment subcommand accepts; unset flags keep config file values."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="YAML run config file")
    parent.add_argument("--seed", type=int)
    parent.add_argument("--out", help="output directory for checkpoints, datasets and metrics")
    parent.add_argument("--checkpoints", help="checkpoint directory (default: <out>/checkpoints)")
    parent.add_argument("--rand-scale", dest="rand_scale", type=float,
                        help="shrink every randomization range around its midpoint")
    parent.add_argument("--photorealism", choices=("on", "off"))
    parent.add_argument("--resolution", type=int)
    parent.add_argument("--layouts", type=int, nargs="+", help="kitchen layout ids to evaluate on")
    parent.add_argument("--ranges", help="YAML randomization range table")
    parent.add_argument("--scripted", action="store_true", default=None, help="use the scripted skills baseline")
    parent.add_argument("--random", action="store_true", default=None, help="use uniform-random skills")
    parent.add_argument("--oracle-grounding", dest="oracle_grounding", action="store_true", default=None,
                        help="ground the symbolic state from the simulator instead of the detectors")
    parent.add_argument("--bootstrap-gate", dest="bootstrap_gate", choices=BOOTSTRAP_GATES)
    parent.add_argument("--episodes", type=int, help="training episodes per skill")
    parent.add_argument("-v", "--verbose", action="store_true")
    return parent


def build_parser() -> argparse.ArgumentParser:
    run_flags = _run_flags()
    parser = argparse.ArgumentParser(prog="skill-composer",
                                     description="Learn kitchen skills in simulation and compose them with a planner.")
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train-skill", parents=[run_flags], help="train one skill")
    train.add_argument("--skill", required=True)
    train.set_defaults(func=cmd_train_skill)

    evaluate = commands.add_parser("eval-skill", parents=[run_flags], help="evaluate one skill on held-out configs")
    evaluate.add_argument("--skill", required=True)
    evaluate.add_argument("--configs", dest="eval_configs", type=int, help="number of held-out start states")
    evaluate.set_defaults(func=cmd_eval_skill)

    activity = commands.add_parser("run-activity", parents=[run_flags], help="run the activity on each kitchen")
    activity.add_argument("--trials", type=int, help="trials per kitchen")
    activity.add_argument("--goal", help="goal file")
    activity.set_defaults(func=cmd_run_activity)

    ablate = commands.add_parser("ablate", parents=[run_flags], help="photorealism and randomization ablations")
    ablate.add_argument("--trials", type=int, help="trials per kitchen")
    ablate.add_argument("--goal", help="goal file")
    ablate.set_defaults(func=cmd_ablate)

    plan = commands.add_parser("plan", help="plan from a goal file and a symbolic state file")
    plan.add_argument("--goal", required=True)
    plan.add_argument("--state", required=True)
    plan.add_argument("-v", "--verbose", action="store_true")
    plan.set_defaults(func=cmd_plan)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    Logger.set_verbosity(args.verbose)

    try:
        result = args.func(args)
    except (ConfigError, RandomizationError, UnknownSkillError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except (GoalLanguageError, GroundingError, SymbolicStateError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_USAGE
    except MissingArtifactError as e:
        logger.error(str(e))
        return EXIT_MISSING_ARTIFACT
    except (StoreError, OSError) as e:
        logger.error(str(e))
        return EXIT_IO

    if result is None:
        print("; no plan")
        return EXIT_NO_PLAN
    if result:
        print(result)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
