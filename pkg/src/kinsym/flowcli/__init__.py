"""Scenario catalog, scenario files, the planar check, reports and the command line."""

from .catalog import builtin, builtin_catalog, builtin_names
from .loader import load_scenario, validate_scenario
from .planar import PLANAR_CATALOG, Scenario2D, check_2d, load_scenario_2d
from .report import CheckRecord, Report
from .runner import run_report

__all__ = [
    "CheckRecord", "PLANAR_CATALOG", "Report", "Scenario2D", "builtin", "builtin_catalog",
    "builtin_names", "check_2d", "load_scenario", "load_scenario_2d", "run_report",
    "validate_scenario",
]
