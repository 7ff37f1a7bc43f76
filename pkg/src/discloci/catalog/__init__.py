"""Fixtures for the worked examples, with a runner that reports exact diffs."""

from .model import Expectation, Fixture, FixtureError, fixture_ids, load_all, load_fixture, parse_fixture
from .runner import (Check, FixtureReport, FixtureRunError, matches, render, run_all, run_fixture)

__all__ = [
    "Expectation", "Fixture", "FixtureError", "fixture_ids", "load_all", "load_fixture", "parse_fixture",
    "Check", "FixtureReport", "FixtureRunError", "matches", "render", "run_all", "run_fixture",
]
