"""Parsers module"""
from .config_parser import ExperimentConfigParser
from .graph_parser import GraphFileParser, PotentialsFileParser

__all__ = ["ExperimentConfigParser", "GraphFileParser", "PotentialsFileParser"]
