"""
Funciones complejas sobre R^d.

Los valores se guardan en un arreglo denso de largo m^d indexado por la
codificación mixed-radix de (x_1, ..., x_d), con x_1 como dígito menos
significativo.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..rings.ring_table import RingTable
from ..utils.errors import ArgumentError

MEAN_ZERO_TOLERANCE = 1e-9


@dataclass
class GridFunction:
    """
    Función f: R^d -> C.

    Attributes:
        ring: Anillo base
        d: Dimensión
        values: Arreglo complejo de largo m^d
        mean_zero: Certifica |sum f| <= 1e-9 * ||f||_2 * m^{d/2}
    """

    ring: RingTable
    d: int
    values: np.ndarray
    mean_zero: bool = field(default=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.ring.size ** self.d,):
            raise ArgumentError(
                f"Se esperaban {self.ring.size ** self.d} valores para {self.ring.name}^{self.d}, "
                f"se obtuvieron {self.values.shape}"
            )
        if self.mean_zero and not self.is_mean_zero():
            raise ArgumentError("La función no tiene media cero")

    @classmethod
    def zeros(cls, ring: RingTable, d: int) -> "GridFunction":
        return cls(ring, d, np.zeros(ring.size ** d, dtype=np.complex128))

    @classmethod
    def constant(cls, ring: RingTable, d: int, value: complex = 1.0) -> "GridFunction":
        return cls(ring, d, np.full(ring.size ** d, value, dtype=np.complex128))

    @classmethod
    def indicator(cls, ring: RingTable, d: int, points) -> "GridFunction":
        """Indicadora de un conjunto de índices de puntos."""
        values = np.zeros(ring.size ** d, dtype=np.complex128)
        values[np.asarray(list(points), dtype=np.int64)] = 1.0
        return cls(ring, d, values)

    @property
    def size(self) -> int:
        return self.values.shape[0]

    def norm(self) -> float:
        """||f||_2 = (sum |f(x)|^2)^{1/2}."""
        return float(np.linalg.norm(self.values))

    def total(self) -> complex:
        return complex(self.values.sum())

    def inner(self, other: "GridFunction") -> complex:
        """<f, g> = sum f(x) conj(g(x))."""
        self.check_compatible(other)
        return complex(np.vdot(other.values, self.values))

    def is_mean_zero(self, tolerance: Optional[float] = None) -> bool:
        tolerance = MEAN_ZERO_TOLERANCE if tolerance is None else tolerance
        bound = tolerance * self.norm() * self.ring.size ** (self.d / 2)
        return abs(self.total()) <= bound

    def check_compatible(self, other: "GridFunction"):
        if other.ring is not self.ring or other.d != self.d:
            raise ArgumentError(
                f"Funciones incompatibles: {self.ring.name}^{self.d} vs {other.ring.name}^{other.d}"
            )
