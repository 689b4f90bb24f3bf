"""Domain Entities"""
from .circuit_graph import CircuitGraph, make_crossbar
from .run_trace import IterationRecord, RunStatus, RunTrace
from .training import TrainingSample, TrainingSet

__all__ = [
    "CircuitGraph",
    "make_crossbar",
    "IterationRecord",
    "RunStatus",
    "RunTrace",
    "TrainingSample",
    "TrainingSet",
]
