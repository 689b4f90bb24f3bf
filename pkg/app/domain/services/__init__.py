"""Domain Services - física del circuito, aprendizaje y análisis"""
