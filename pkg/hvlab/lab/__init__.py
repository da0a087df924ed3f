"""Experiments that probe the domain of T_g, and the acceptance suite."""
from .experiments import EXPERIMENTS
from .report import EXPECTATIONS, ExperimentReport
from .suite import CRITERIA, PAPER_ACCEPTANCE, paper_acceptance
