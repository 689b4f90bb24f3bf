"""Infrastructure Layer - External Concerns"""
