"""Rigidity of point-hyperplane frameworks: exact constraint matrices,
projective transfer to bar-joint frameworks, and combinatorial counts."""

from . import constructions, counts, kernels, matrices, matroidlab, phgraph, scenes, transfer
from .errors import *  # noqa: F401,F403
from .exactla import LabeledMatrix, rank, nullity
from .matrices import Configuration, SphericalConfiguration, RigidityVerdict, rigidity
from .phgraph import Edge, EdgeSubset, LoopGraph, PointHyperplaneGraph

__version__ = "0.1.0"

__all__ = [
    "constructions", "counts", "kernels", "matrices", "matroidlab", "phgraph", "scenes", "transfer",
    "LabeledMatrix", "rank", "nullity", "Configuration", "SphericalConfiguration", "RigidityVerdict",
    "rigidity", "Edge", "EdgeSubset", "LoopGraph", "PointHyperplaneGraph",
]
