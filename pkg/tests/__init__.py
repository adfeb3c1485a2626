"""
Inicialización de la suite de tests.
"""