"""Application Layer - Use Cases"""
