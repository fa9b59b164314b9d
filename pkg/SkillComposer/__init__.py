from .Kitchen.KitchenSim import KitchenEnv, SimHandle
from .Planner.Executor import execute_activity
