"""Bicriteria (makespan, weighted completion time) schedules by breakpoint composition."""

from .analysis import (A, Pdf, beta, balanced_rho, composed_avg_bound, dual_h, dual_payoff,
                       f_opt, rho_for_beta, schedule_to_pdf, solve_game)
from .composer import (CompositionReport, best_for_rho, breakpoint_compose, pareto_frontier,
                       per_job_stretch, sweep, two_two)
from .core import (BicriteriaPoint, Instance, Job, Schedule, compose, metrics, truncate,
                   validate, violations)
from .oracles import opt_makespan, opt_weighted_completion, optima, smith_order

__version__ = "0.1.0"
