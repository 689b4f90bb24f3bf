"""Value Objects module"""
from .conductance import ConductanceVector
from .learning_config import LearningConfig
from .network_state import NetworkState
from .step_schedule import ConstantSchedule, PowerLawSchedule, StepSchedule

__all__ = [
    "ConductanceVector",
    "LearningConfig",
    "NetworkState",
    "ConstantSchedule",
    "PowerLawSchedule",
    "StepSchedule",
]
