"""
Pydantic schemas for experiment configuration and run reports.
"""

from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config import settings

ParamValue = Union[int, float, str]


class ExperimentConfig(BaseModel):
    """Schema for one experiment run, read from a flat JSON document."""

    model_config = ConfigDict(extra="forbid")

    experiment: str = Field(..., description="Registered experiment name")
    params: dict[str, ParamValue] = Field(default_factory=dict, description="Experiment parameters")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Master seed (64-bit unsigned)")
    threads: Union[int, Literal["auto"]] = Field(default="auto", description="Worker count")
    output_dir: str = Field(default_factory=lambda: settings.output_dir, description="Output directory")

    @field_validator("threads")
    @classmethod
    def positive_threads(cls, value: Union[int, str]) -> Union[int, str]:
        """Reject zero or negative worker counts."""
        if isinstance(value, int) and value < 1:
            raise ValueError("threads must be a positive integer or 'auto'")
        return value


class SeedInfo(BaseModel):
    """How per-sample seeds were derived."""

    master: int
    derivation: str = "splitmix64(splitmix64(master) ^ sample_index)"


class RunReport(BaseModel):
    """Schema for report.json: everything needed to re-run an experiment."""

    tool_version: str
    experiment: str
    config: ExperimentConfig
    results: dict[str, Any] = Field(default_factory=dict)
    seeds: SeedInfo
    files: list[str] = Field(default_factory=list)
    wall_time: float = Field(..., description="Seconds")


class ExperimentListing(BaseModel):
    """Schema for one row of `tbsim list`."""

    name: str
    description: str
    params: dict[str, ParamValue]
