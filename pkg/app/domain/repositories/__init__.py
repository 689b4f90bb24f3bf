"""Repository Interfaces"""
from .i_repository import IArtifactRepository, IGraphRepository

__all__ = ["IArtifactRepository", "IGraphRepository"]
