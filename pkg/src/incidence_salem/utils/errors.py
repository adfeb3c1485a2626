"""
Tipos de excepción para Incidence-Salem.

Todas las excepciones del paquete derivan de IncidenceSalemError para que la
línea de comandos pueda distinguir errores del dominio de fallas inesperadas.
"""

from typing import Optional


class IncidenceSalemError(Exception):
    """Error base del paquete."""


class ArgumentError(IncidenceSalemError, ValueError):
    """Argumento inválido para una operación (dimensión, unidad, tamaño, ...)."""


class RingConstructionError(IncidenceSalemError):
    """No se pudo construir o verificar un anillo o un emparejamiento."""


class ScaleError(RingConstructionError):
    """
    La instancia excede la escala soportada.

    Args:
        quantity: Nombre de la magnitud que se excedió (por ejemplo 'm^d')
        value: Valor observado
        limit: Límite soportado
    """

    def __init__(self, quantity: str, value: int, limit: int):
        self.quantity = quantity
        self.value = value
        self.limit = limit
        super().__init__(
            f"Fuera de escala: {quantity} = {value} excede el límite {limit}"
        )


class SpecParseError(ArgumentError):
    """
    Texto de especificación de anillo mal formado.

    Args:
        message: Descripción del problema
        position: Posición (0-based) del carácter problemático
        expected: Token esperado en esa posición
    """

    def __init__(self, message: str, position: int, expected: Optional[str] = None):
        self.position = position
        self.expected = expected
        detail = f" (se esperaba {expected})" if expected else ""
        super().__init__(f"{message} en la posición {position}{detail}")


class SpecSemanticError(ArgumentError):
    """Especificación gramaticalmente válida pero sin sentido (por ejemplo gf(6))."""
