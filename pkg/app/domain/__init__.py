"""Domain Layer - Business Logic Core"""
