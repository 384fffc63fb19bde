"""Exact solvers for the colored knapsack problem."""
from .dp1 import solve_dp1
from .dp2 import solve_dp2
from .errors import BenchMismatch, CkpError, InfeasibleReducedLP, InstanceError, InstanceTooLarge
from .lp import LpSolution, solve_ckp_lp, solve_kp_lp
from .model import Instance, Item, Solution, is_color_feasible, parse_instance, read_instance, write_instance
from .oracle import brute_force_ckp, brute_force_kp, lp_vertex_oracle

__all__ = [
    "BenchMismatch",
    "CkpError",
    "InfeasibleReducedLP",
    "Instance",
    "InstanceError",
    "InstanceTooLarge",
    "Item",
    "LpSolution",
    "Solution",
    "brute_force_ckp",
    "brute_force_kp",
    "is_color_feasible",
    "lp_vertex_oracle",
    "parse_instance",
    "read_instance",
    "solve_ckp_lp",
    "solve_dp1",
    "solve_dp2",
    "solve_kp_lp",
    "write_instance",
]
