"""Pydantic schemas for configuration files and reports."""

from src.schemas.experiment import ExperimentConfig, ExperimentListing, RunReport, SeedInfo

__all__ = ["ExperimentConfig", "ExperimentListing", "RunReport", "SeedInfo"]
