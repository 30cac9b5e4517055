"""Witnessed decisions, decision trees and overlap decay."""

from src.services.witness.decisions import (
    DecisionTree,
    Splitter,
    WitnessLayout,
    build_decision_tree,
    coarse_boundary_chains,
    jump_history,
    overlap_decay,
    path_uniqueness,
    record_decision,
)

__all__ = [
    "DecisionTree",
    "Splitter",
    "WitnessLayout",
    "build_decision_tree",
    "coarse_boundary_chains",
    "jump_history",
    "overlap_decay",
    "path_uniqueness",
    "record_decision",
]
