"""Bundled datasets."""

from importlib import resources
from pathlib import Path


def swiss_path() -> Path:
    """Path of the bundled Swiss socioeconomic indicators CSV (1888, 47 provinces)."""
    return Path(resources.files(__package__) / "swiss.csv")
