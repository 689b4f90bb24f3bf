"""Use Cases module"""
from .compute_bound import ComputeBoundUseCase
from .run_experiment import ComputeExperimentUseCase, RunExperimentUseCase
from .run_size_sweep import SizeSweepUseCase
from .run_step_size_sweep import StepSizeSweepUseCase
from .run_stochastic_experiment import StochasticExperimentUseCase
from .run_verification import VerificationUseCase

__all__ = [
    "ComputeBoundUseCase",
    "ComputeExperimentUseCase",
    "RunExperimentUseCase",
    "SizeSweepUseCase",
    "StepSizeSweepUseCase",
    "StochasticExperimentUseCase",
    "VerificationUseCase",
]
