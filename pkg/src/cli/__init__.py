"""Scenario files, experiment dispatch and output."""

from .models import Experiment, ScenarioConfig, DispatchResult, LIST_FIELDS
from .parser import parse_config, read_assignments
from .dispatch import dispatch, write_outputs, summary_payload, versions, EXIT_PASS, EXIT_FLAG_FAILED, EXIT_ERROR
from .output import print_summary

__all__ = [
    "Experiment",
    "ScenarioConfig",
    "DispatchResult",
    "LIST_FIELDS",
    "parse_config",
    "read_assignments",
    "dispatch",
    "write_outputs",
    "summary_payload",
    "versions",
    "EXIT_PASS",
    "EXIT_FLAG_FAILED",
    "EXIT_ERROR",
    "print_summary",
]
