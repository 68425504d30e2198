"""Benchmark problem families: oracles, random generators, file I/O, real data."""

from .oracles import CoverageOracle, FacilityOracle, InfluenceOracle
from .generate import GenParams, derived_seed, generate
from .io import InstanceFormatError, read_instance, write_instance
from .realdata import load_forum_cov, load_movielens_inf

__all__ = [
    "CoverageOracle",
    "FacilityOracle",
    "InfluenceOracle",
    "GenParams",
    "derived_seed",
    "generate",
    "InstanceFormatError",
    "read_instance",
    "write_instance",
    "load_forum_cov",
    "load_movielens_inf",
]
