"""API Layer - HTTP Interface"""
