"""
Aritmética de cuerpos finitos F_{p^k}.

Los elementos se indexan por su vector de coeficientes little-endian
(c_0, ..., c_{k-1}) con índice sum(c_i * p^i). La multiplicación se tabula con
tablas exp/log respecto de un generador del grupo multiplicativo.
"""

import itertools
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from ..utils.errors import RingConstructionError
from ..utils.logging import get_logger

logger = get_logger(__name__)

# Polinomios de Conway (coeficientes little-endian, mónicos)
CONWAY_MODULI = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (7, 3): (4, 0, 6, 1),
}


def _trim(poly: List[int]) -> List[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Resto de a módulo b sobre Z/p (b mónico)."""
    rest = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    while len(rest) >= len(b):
        shift = len(rest) - len(b)
        factor = rest[-1]
        for i, c in enumerate(b):
            rest[shift + i] = (rest[shift + i] - factor * c) % p
        _trim(rest)
    return rest


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """
    Verificar irreducibilidad buscando factores mónicos de grado <= k // 2.

    Args:
        modulus: Coeficientes little-endian de un polinomio mónico de grado k
        p: Característica

    Returns:
        bool: True si no existe ningún factor propio
    """
    k = len(modulus) - 1
    if k <= 1:
        return True
    for degree in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=degree):
            if not poly_mod(modulus, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, k: int) -> Tuple[int, ...]:
    """
    Módulo por defecto para F_{p^k}.

    Usa el polinomio de Conway tabulado cuando existe y, si no, el menor
    polinomio mónico irreducible en orden lexicográfico de coeficientes.
    """
    if k == 1:
        return (0, 1)
    if (p, k) in CONWAY_MODULI:
        return CONWAY_MODULI[(p, k)]
    for low in itertools.product(range(p), repeat=k):
        candidate = tuple(reversed(low)) + (1,)
        if candidate[0] != 0 and is_irreducible(candidate, p):
            return candidate
    raise RingConstructionError(f"No se encontró un polinomio irreducible de grado {k} sobre Z/{p}")


class GaloisField:
    """
    Tablas de aritmética de F_{p^k}.

    Attributes:
        p, k, q: Característica, grado y orden
        coeffs: Arreglo (q, k) con los coeficientes de cada elemento
        add, mul, neg: Tablas de índices
        inv: Inverso multiplicativo (-1 en el cero)
        trace: Traza absoluta a F_p de cada elemento, como entero en [0, p)
        labels: Nombres legibles, polinomios en 'a'
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus)

        if not is_irreducible(self.modulus, p):
            raise RingConstructionError(
                f"El módulo {list(self.modulus)} es reducible sobre Z/{p}; gf({p},{k}) no es un cuerpo"
            )

        q = self.q
        indices = np.arange(q, dtype=np.int64)
        self.coeffs = np.stack([(indices // p ** i) % p for i in range(k)], axis=1)
        self._weights = p ** np.arange(k, dtype=np.int64)

        add = np.zeros((q, q), dtype=np.int64)
        for i in range(k):
            add += ((self.coeffs[:, None, i] + self.coeffs[None, :, i]) % p) * p ** i
        self.add = add
        self.neg = ((-self.coeffs) % p) @ self._weights

        self.exp, self.log = self._exp_log_tables()
        mul = np.zeros((q, q), dtype=np.int64)
        logs = self.log[1:]
        mul[1:, 1:] = self.exp[(logs[:, None] + logs[None, :]) % (q - 1)]
        self.mul = mul

        self.inv = np.full(q, -1, dtype=np.int64)
        self.inv[1:] = self.exp[(-logs) % (q - 1)]

        # Tr(x) = x + x^p + ... + x^{p^{k-1}}; el resultado vive en F_p (índices < p)
        trace = np.zeros(q, dtype=np.int64)
        power = indices.copy()
        for _ in range(k):
            trace = add[trace, power]
            power = self._pow_table(power, p)
        if np.any(trace >= p):
            raise RingConstructionError("La traza no cayó en el cuerpo primo")
        self.trace = trace

        self.labels = tuple(self._label(i) for i in range(q))
        for table in (self.add, self.mul, self.neg, self.inv, self.trace, self.coeffs):
            table.setflags(write=False)

    def _mul_poly(self, a: int, b: int) -> int:
        """Producto de dos elementos por aritmética polinomial (sin tablas)."""
        ca = self.coeffs[a]
        cb = self.coeffs[b]
        product = [0] * (2 * self.k - 1)
        for i in range(self.k):
            for j in range(self.k):
                product[i + j] += int(ca[i]) * int(cb[j])
        rest = poly_mod(product, self.modulus, self.p)
        return sum(c * self.p ** i for i, c in enumerate(rest))

    def _exp_log_tables(self) -> Tuple[np.ndarray, np.ndarray]:
        """Tablas exp/log respecto del menor generador del grupo multiplicativo."""
        q = self.q
        for generator in range(2 if q > 2 else 1, q):
            exp = np.zeros(q - 1, dtype=np.int64)
            value = 1
            for e in range(q - 1):
                exp[e] = value
                value = self._mul_poly(value, generator)
                if value == 1 and e < q - 2:
                    break
            else:
                log = np.zeros(q, dtype=np.int64)
                log[exp] = np.arange(q - 1)
                logger.debug(f"gf({self.p},{self.k}): generador {generator}")
                return exp, log
        raise RingConstructionError(f"gf({self.p},{self.k}) no tiene generador multiplicativo")

    def _pow_table(self, elements: np.ndarray, exponent: int) -> np.ndarray:
        result = np.zeros_like(elements)
        nonzero = elements != 0
        result[nonzero] = self.exp[(self.log[elements[nonzero]] * exponent) % (self.q - 1)]
        return result

    def _label(self, index: int) -> str:
        if self.k == 1:
            return str(index)
        terms = []
        for power in range(self.k - 1, -1, -1):
            c = int(self.coeffs[index, power])
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            else:
                monomial = "a" if power == 1 else f"a^{power}"
                terms.append(monomial if c == 1 else f"{c}{monomial}")
        return "+".join(terms) if terms else "0"

    def encode(self, coeffs: np.ndarray) -> np.ndarray:
        """Índices de elementos a partir de coeficientes (..., k)."""
        return np.asarray(coeffs, dtype=np.int64) @ self._weights


@lru_cache(maxsize=32)
def galois_field(p: int, k: int, modulus: Tuple[int, ...]) -> GaloisField:
    """Construir (y memorizar) las tablas de F_{p^k}."""
    return GaloisField(p, k, modulus)
