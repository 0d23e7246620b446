"""Avoidance loci of real varieties: classification of linear spaces, region
atlases, dual and Chow forms, hyperplane arrangements and convexity tests."""

from .catalog import named
from .classify import (Classification, VarietySpec, Verdict, classify_dual_line,
                       classify_hyperplane_vs_curve, classify_line, classify_point)
from .grassmann import LinSpace
from .poly import MPoly, parse_poly
from .regions import AtlasConfig, RegionAtlas, build_atlas

__version__ = "0.1.0"

__all__ = [
    "AtlasConfig", "Classification", "LinSpace", "MPoly", "RegionAtlas", "VarietySpec",
    "Verdict", "build_atlas", "classify_dual_line", "classify_hyperplane_vs_curve",
    "classify_line", "classify_point", "named", "parse_poly",
]
