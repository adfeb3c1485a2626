"""
Parser del mini-lenguaje de specs de anillos.

Gramática (los espacios no son significativos)::

    spec  := NAME '(' arg (',' arg)* ')'
    arg   := spec | INT | '[' INT (',' INT)* ']'

Constructores: zmod(n), gf(q), gf(p,k), gf(p,k,[c0,...,ck]), mat(n,gf(...)),
prod(spec,...), trunc(gf(...),k).
"""

import re
from typing import Callable, Dict, List, Optional, Union

from ..rings.spec import GF, Mat, Prod, RingSpec, Trunc, ZMod, field_spec
from ..utils.errors import SpecParseError, SpecSemanticError
from ..utils.logging import get_logger

logger = get_logger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<name>[a-z]+)|(?P<int>-?\d+)|(?P<punct>[(),\[\]]))")

Argument = Union[RingSpec, int, List[int]]


def _zmod(args: List[Argument]) -> RingSpec:
    (n,) = _expect_ints("zmod", args, 1)
    return ZMod(n)


def _gf(args: List[Argument]) -> RingSpec:
    if len(args) == 1:
        (q,) = _expect_ints("gf", args, 1)
        return field_spec(q)
    if len(args) == 2:
        p, k = _expect_ints("gf", args, 2)
        return GF(p, k)
    if len(args) == 3 and isinstance(args[2], list):
        p, k = _expect_ints("gf", args[:2], 2)
        return GF(p, k, tuple(args[2]))
    raise SpecSemanticError("gf admite gf(q), gf(p,k) o gf(p,k,[c0,...,ck])")


def _mat(args: List[Argument]) -> RingSpec:
    if len(args) != 2 or not isinstance(args[0], int) or not isinstance(args[1], RingSpec):
        raise SpecSemanticError("mat requiere mat(n, gf(...))")
    return Mat(args[0], args[1])  # type: ignore[arg-type]


def _prod(args: List[Argument]) -> RingSpec:
    if not args or not all(isinstance(a, RingSpec) for a in args):
        raise SpecSemanticError("prod requiere uno o más specs de anillo")
    return Prod(tuple(args))  # type: ignore[arg-type]


def _trunc(args: List[Argument]) -> RingSpec:
    if len(args) != 2 or not isinstance(args[0], RingSpec) or not isinstance(args[1], int):
        raise SpecSemanticError("trunc requiere trunc(gf(...), k)")
    return Trunc(args[0], args[1])  # type: ignore[arg-type]


def _expect_ints(name: str, args: List[Argument], count: int) -> List[int]:
    if len(args) != count or not all(isinstance(a, int) for a in args):
        raise SpecSemanticError(f"{name} requiere {count} argumento(s) entero(s)")
    return list(args)  # type: ignore[arg-type]


CONSTRUCTORS: Dict[str, Callable[[List[Argument]], RingSpec]] = {
    'zmod': _zmod,
    'gf': _gf,
    'mat': _mat,
    'prod': _prod,
    'trunc': _trunc,
}


class _Parser:
    """Descenso recursivo sobre la lista de tokens (tipo, valor, posición)."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.index = 0

    @staticmethod
    def _tokenize(text: str):
        tokens = []
        position = 0
        while position < len(text):
            if text[position].isspace():
                position += 1
                continue
            match = _TOKEN.match(text, position)
            if match is None:
                raise SpecParseError(f"Carácter inesperado {text[position]!r}", position)
            kind = match.lastgroup
            start = match.start(kind)
            tokens.append((kind, match.group(kind), start))
            position = match.end()
        return tokens

    def _peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def _take(self, kind: str, value: Optional[str] = None, expected: Optional[str] = None):
        token = self._peek()
        if token[0] != kind or (value is not None and token[1] != value):
            found = token[1] or "fin del texto"
            raise SpecParseError(f"Token inesperado '{found}'", token[2], expected or value or kind)
        self.index += 1
        return token

    def parse(self) -> RingSpec:
        spec = self._spec()
        kind, value, position = self._peek()
        if kind != "end":
            raise SpecParseError(f"Texto sobrante '{value}'", position, "fin del texto")
        return spec

    def _spec(self) -> RingSpec:
        _, name, position = self._take("name", expected="nombre de constructor")
        if name not in CONSTRUCTORS:
            raise SpecParseError(f"Constructor desconocido '{name}'", position,
                                 "|".join(CONSTRUCTORS))
        self._take("punct", "(")
        args = [self._argument()]
        while self._peek()[1] == ",":
            self.index += 1
            args.append(self._argument())
        self._take("punct", ")", expected="',' o ')'")
        return CONSTRUCTORS[name](args)

    def _argument(self) -> Argument:
        kind, value, position = self._peek()
        if kind == "name":
            return self._spec()
        if kind == "int":
            self.index += 1
            return int(value)
        if value == "[":
            self.index += 1
            items = [int(self._take("int", expected="entero")[1])]
            while self._peek()[1] == ",":
                self.index += 1
                items.append(int(self._take("int", expected="entero")[1]))
            self._take("punct", "]", expected="',' o ']'")
            return items
        raise SpecParseError(f"Argumento inválido '{value or 'fin del texto'}'", position,
                             "spec, entero o lista")


def parse_ring_spec(text: str) -> RingSpec:
    """
    Parsear un spec de anillo.

    Args:
        text: Texto como "prod(gf(2), mat(2, gf(3)))"

    Returns:
        RingSpec: Descripción inmutable del anillo

    Raises:
        SpecParseError: Si el texto está mal formado (incluye posición y token esperado)
        SpecSemanticError: Si el texto es válido pero no describe un anillo (gf(6))
    """
    if not isinstance(text, str) or not text.strip():
        raise SpecParseError("Spec vacío", 0, "nombre de constructor")
    spec = _Parser(text).parse()
    logger.debug(f"Spec '{text}' -> {spec.canonical()}")
    return spec


def canonical_spec(text: str) -> str:
    """Forma canónica de un spec textual."""
    return parse_ring_spec(text).canonical()
