"""
ResistNet
Contrastive Learning sobre redes de resistencias lineales: simulador,
verificación numérica y experimentos reproducibles
"""

__version__ = "0.1.0"
