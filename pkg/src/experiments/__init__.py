"""Experiment registry, runner, output writers and the verification suite."""
