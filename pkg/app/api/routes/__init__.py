"""Routes module"""
from .bound import router as bound_router
from .experiments import router as experiments_router

__all__ = ["bound_router", "experiments_router"]
