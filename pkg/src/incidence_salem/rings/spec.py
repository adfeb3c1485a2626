"""
Descripciones simbólicas de anillos finitos.

Un RingSpec describe un anillo sin materializar su aritmética: Z/n, cuerpos
de Galois, anillos de matrices sobre un cuerpo, productos directos y anillos
truncados F_q[e]/(e^k). Los specs son inmutables y hasheables, de modo que
sirven como clave de caché para los anillos construidos.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

from ..utils.errors import ArgumentError, SpecSemanticError
from ..utils.helpers import is_prime, prime_power


@dataclass(frozen=True)
class RingSpec:
    """Clase base de las descripciones de anillos."""

    constructor = "ring"

    @property
    def size(self) -> int:
        """Cantidad de elementos del anillo descrito."""
        raise NotImplementedError

    def canonical(self) -> str:
        """String canónico, sin espacios y con los valores por defecto expandidos."""
        raise NotImplementedError

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class ZMod(RingSpec):
    """Enteros módulo n."""

    n: int

    constructor = "zmod"

    def __post_init__(self):
        if self.n < 2:
            raise ArgumentError(f"zmod requiere n >= 2, se obtuvo {self.n}")

    @property
    def size(self) -> int:
        return self.n

    def canonical(self) -> str:
        return f"zmod({self.n})"


@dataclass(frozen=True)
class GF(RingSpec):
    """
    Cuerpo de Galois F_{p^k} = F_p[a]/(modulus).

    El módulo se guarda como lista de coeficientes little-endian de un
    polinomio mónico de grado k. Si no se indica, se usa el módulo por
    defecto de galois.default_modulus.
    """

    p: int
    k: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    constructor = "gf"

    def __post_init__(self):
        if not is_prime(self.p):
            raise SpecSemanticError(f"gf requiere p primo, se obtuvo {self.p}")
        if self.k < 1:
            raise ArgumentError(f"gf requiere k >= 1, se obtuvo {self.k}")
        if self.modulus is None:
            from .galois import default_modulus
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        else:
            object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        if len(self.modulus) != self.k + 1 or self.modulus[-1] % self.p != 1:
            raise SpecSemanticError(
                f"El módulo {list(self.modulus)} no es un polinomio mónico de grado {self.k} sobre Z/{self.p}"
            )
        if any(not 0 <= c < self.p for c in self.modulus):
            raise SpecSemanticError(f"Coeficientes del módulo fuera de rango para p={self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def size(self) -> int:
        return self.q

    def canonical(self) -> str:
        if self.k == 1:
            return f"gf({self.p},1)"
        coefficients = ",".join(str(c) for c in self.modulus)
        return f"gf({self.p},{self.k},[{coefficients}])"


@dataclass(frozen=True)
class Mat(RingSpec):
    """Matrices n x n sobre un cuerpo finito."""

    n: int
    base: GF

    constructor = "mat"

    def __post_init__(self):
        if self.n < 1:
            raise ArgumentError(f"mat requiere n >= 1, se obtuvo {self.n}")
        if not isinstance(self.base, GF):
            raise SpecSemanticError("mat solo admite un cuerpo gf(...) como base")

    @property
    def size(self) -> int:
        return self.base.q ** (self.n * self.n)

    def canonical(self) -> str:
        return f"mat({self.n},{self.base.canonical()})"


@dataclass(frozen=True)
class Prod(RingSpec):
    """Producto directo de anillos; el factor de la izquierda es el dígito menos significativo."""

    factors: Tuple[RingSpec, ...]

    constructor = "prod"

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ArgumentError("prod requiere al menos un factor")

    @property
    def size(self) -> int:
        total = 1
        for factor in self.factors:
            total *= factor.size
        return total

    def canonical(self) -> str:
        return "prod(" + ",".join(f.canonical() for f in self.factors) + ")"


@dataclass(frozen=True)
class Trunc(RingSpec):
    """Anillo truncado F_q[e]/(e^k)."""

    base: GF
    k: int

    constructor = "trunc"

    def __post_init__(self):
        if not isinstance(self.base, GF):
            raise SpecSemanticError("trunc solo admite un cuerpo gf(...) como base")
        if self.k < 2:
            raise ArgumentError(f"trunc requiere k >= 2, se obtuvo {self.k}")

    @property
    def size(self) -> int:
        return self.base.q ** self.k

    def canonical(self) -> str:
        return f"trunc({self.base.canonical()},{self.k})"


def field_spec(q: int) -> GF:
    """
    Expandir el azúcar gf(q) a gf(p, k) con el módulo por defecto.

    Args:
        q: Orden del cuerpo

    Returns:
        GF: Spec del cuerpo

    Raises:
        SpecSemanticError: Si q no es potencia de un primo
    """
    decomposition = prime_power(q)
    if decomposition is None:
        raise SpecSemanticError(f"{q} no es potencia de un primo")
    p, k = decomposition
    return GF(p, k)
