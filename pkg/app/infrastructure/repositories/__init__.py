"""Repositories module"""
from .csv_artifact_repository import CsvArtifactRepository
from .file_graph_repository import FileGraphRepository

__all__ = ["CsvArtifactRepository", "FileGraphRepository"]
