"""Ring expressions: parsing, printing, and elaboration to rings.

    expr := Zn(int) | GF(int[,int[,poly]]) | M(int,expr) | T(int,expr)
          | Prod(expr{,expr}) | Tri(expr,module-ref,expr) | Quot(expr,ideal-ref)
          | Corner(expr,int) | Center(expr)

A module-ref is one of ``nat``, ``zero``, ``col``, ``row``, ``ideal[k]`` or a
name from the sidecar. An ideal-ref is an element index (the ideal it
generates), ``J``, ``MR``, an explicit set ``{a,b,...}`` or a sidecar name.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import InvalidParameter
from .ring import (FiniteRing, build_corner, build_cyclic, build_field, build_matrix_ring,
                   build_product, build_quotient, build_upper_triangular, center, format_poly)

HEADS = ("Zn", "GF", "M", "T", "Prod", "Tri", "Quot", "Corner", "Center")
BUILTIN_MODULES = ("nat", "zero", "col", "row")


class DslSyntaxError(InvalidParameter):
    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at offset {self.offset}", self.offset)


class ElaborationError(InvalidParameter):
    def __init__(self, message: str, node: Node):
        self.node = node
        super().__init__(f"{message} in {print_expr(node)} (offset {node.offset})", print_expr(node))


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[int, ...]  # highest degree first


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class IndexSet:
    members: tuple[int, ...]


Arg = Union[int, Poly, Ref, IndexSet, "Node"]


@dataclass(frozen=True)
class Node:
    head: str
    args: tuple
    offset: int = field(default=0, compare=False)


# -- parsing ------------------------------------------------------------------

_TERM = re.compile(r"(\d+)?(x(?:\^(\d+))?)?")


def parse_poly(text: str) -> tuple[int, ...]:
    """``x^2+x+1`` -> (1, 1, 1). Raises ValueError on malformed input."""
    terms = {}
    for part in text.split("+"):
        m = _TERM.fullmatch(part)
        if not part or not m or not (m.group(1) or m.group(2)):
            raise ValueError(f"bad polynomial term {part!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        deg = 0 if not m.group(2) else (int(m.group(3)) if m.group(3) else 1)
        if deg in terms:
            raise ValueError(f"repeated degree {deg}")
        terms[deg] = coeff
    top = max(terms)
    return tuple(terms.get(d, 0) for d in range(top, -1, -1))


class _Parser:
    def __init__(self, text: str):
        self.text, self.pos = text, 0

    def fail(self, message: str):
        raise DslSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.text[self.pos]) if self.pos < len(self.text) else "end of input"
            self.fail(f"expected {ch!r}, got {got}")
        self.pos += 1

    def match(self, pattern: str, what: str) -> str:
        self.skip()
        m = re.compile(pattern).match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def integer(self) -> int:
        return int(self.match(r"\d+", "integer"))

    def ident(self) -> str:
        return self.match(r"[A-Za-z_][A-Za-z0-9_]*", "identifier")

    def index_set(self) -> IndexSet:
        self.expect("{")
        members = []
        if self.peek() != "}":
            members.append(self.integer())
            while self.peek() == ",":
                self.pos += 1
                members.append(self.integer())
        self.expect("}")
        return IndexSet(tuple(sorted(set(members))))

    def expr(self) -> Node:
        start = (self.skip(), self.pos)[1]
        head = self.ident()
        if head not in HEADS:
            self.pos = start
            self.fail(f"unknown constructor {head!r}")
        self.expect("(")
        args: list = []
        if head == "Zn":
            args.append(self.integer())
        elif head == "GF":
            args.append(self.integer())
            if self.peek() == ",":
                self.pos += 1
                args.append(self.integer())
                if self.peek() == ",":
                    self.pos += 1
                    at = (self.skip(), self.pos)[1]
                    raw = self.match(r"[0-9x^+]+", "polynomial")
                    try:
                        args.append(Poly(parse_poly(raw)))
                    except ValueError as exc:
                        self.pos = at
                        self.fail(str(exc))
        elif head in ("M", "T"):
            args.append(self.integer())
            self.expect(",")
            args.append(self.expr())
        elif head == "Prod":
            args.append(self.expr())
            while self.peek() == ",":
                self.pos += 1
                args.append(self.expr())
        elif head == "Tri":
            args.append(self.expr())
            self.expect(",")
            args.append(self.module_ref())
            self.expect(",")
            args.append(self.expr())
        elif head == "Quot":
            args.append(self.expr())
            self.expect(",")
            args.append(self.ideal_ref())
        elif head == "Corner":
            args.append(self.expr())
            self.expect(",")
            args.append(self.integer())
        else:
            args.append(self.expr())
        self.expect(")")
        return Node(head, tuple(args), start)

    def module_ref(self) -> Ref:
        name = self.ident()
        if name == "ideal" and self.peek() == "[":
            self.pos += 1
            k = self.integer()
            self.expect("]")
            return Ref(f"ideal[{k}]")
        return Ref(name)

    def ideal_ref(self):
        ch = self.peek()
        if ch == "{":
            return self.index_set()
        if ch.isdigit():
            return self.integer()
        return Ref(self.ident())


def parse_ring_expr(text: str) -> Node:
    p = _Parser(text)
    node = p.expr()
    p.skip()
    if p.pos != len(text):
        p.fail("trailing input")
    return node


def _print_arg(a) -> str:
    if isinstance(a, Node):
        return print_expr(a)
    if isinstance(a, Poly):
        return format_poly(a.coeffs)
    if isinstance(a, Ref):
        return a.name
    if isinstance(a, IndexSet):
        return "{" + ",".join(str(m) for m in a.members) + "}"
    return str(int(a))


def print_expr(node: Node) -> str:
    return f"{node.head}(" + ",".join(_print_arg(a) for a in node.args) + ")"


# -- sidecar and elaboration ----------------------------------------------------

@dataclass
class Sidecar:
    """Named bimodules and ideals referenced from expressions.

    File form: ``{"modules": {name: bimodule}, "ideals": {name: [indices]}}``
    where each bimodule is ``{left_ring, right_ring, group_order, add_table,
    left_action, right_action}`` with the rings given as expressions.
    """

    modules: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path) -> Sidecar:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidParameter(f"cannot read sidecar {path}: {exc}") from None
        return cls(dict(data.get("modules", {})), dict(data.get("ideals", {})))


class Elaborator:
    """Turns expressions into rings, sharing structurally equal subterms."""

    def __init__(self, sidecar: Sidecar | None = None, dense_cap: int | None = None):
        self.sidecar = sidecar or Sidecar()
        self.dense_cap = dense_cap
        self._cache: dict[str, FiniteRing] = {}

    def ring(self, expr) -> FiniteRing:
        node = parse_ring_expr(expr) if isinstance(expr, str) else expr
        key = print_expr(node)
        if key not in self._cache:
            self._cache[key] = self._build(node)
        return self._cache[key]

    __call__ = ring

    def _build(self, node: Node) -> FiniteRing:
        h, a, cap = node.head, node.args, self.dense_cap
        try:
            if h == "Zn":
                return build_cyclic(a[0], cap)
            if h == "GF":
                k = a[1] if len(a) > 1 else 1
                mod = list(a[2].coeffs) if len(a) > 2 else None
                return build_field(a[0], k, mod, cap)
            if h == "M":
                return build_matrix_ring(a[0], self.ring(a[1]), cap)
            if h == "T":
                return build_upper_triangular(a[0], self.ring(a[1]), cap)
            if h == "Prod":
                if len(a) < 2:
                    raise ElaborationError("Prod needs at least two factors", node)
                return build_product([self.ring(x) for x in a], cap)
            if h == "Tri":
                from .triangular import build_formal_triangular
                R, S = self.ring(a[0]), self.ring(a[2])
                return build_formal_triangular(R, self.module(a[1].name, R, S, node), S,
                                               dense_cap=cap)
            if h == "Quot":
                base = self.ring(a[0])
                return build_quotient(base, self.ideal(a[1], base, node),
                                      label=f"Quot({base.label},{_print_arg(a[1])})")
            if h == "Corner":
                base = self.ring(a[0])
                if not 0 <= a[1] < base.order:
                    raise ElaborationError(f"element {a[1]} out of range 0..{base.order - 1}", node)
                ring = build_corner(base, a[1])
                return ring.tabulate(cap)
            if h == "Center":
                return center(self.ring(a[0])).tabulate(cap)
        except ElaborationError:
            raise
        except InvalidParameter as exc:
            raise ElaborationError(str(exc), node) from None
        raise ElaborationError(f"unknown constructor {h}", node)

    def module(self, name: str, R: FiniteRing, S: FiniteRing, node: Node):
        from . import triangular as tri
        from .structure import ideal_generated
        if name in ("nat",) or name.startswith("ideal["):
            if R.label != S.label:
                raise ElaborationError(f"{name} needs equal rings, got {R.label} and {S.label}", node)
        if name == "nat":
            return tri.ring_bimodule(R)
        if name == "zero":
            return tri.zero_bimodule(R, S)
        if name == "col":
            return tri.column_bimodule(R, S)
        if name == "row":
            return tri.row_bimodule(R, S)
        if name.startswith("ideal["):
            k = int(name[6:-1])
            if not 0 <= k < R.order:
                raise ElaborationError(f"element {k} out of range 0..{R.order - 1}", node)
            return tri.ideal_bimodule(R, ideal_generated(R, k).members, label=name)
        if name in self.sidecar.modules:
            M = tri.bimodule_from_dict(self.sidecar.modules[name], self.ring, label=name)
            if M.left_ring.label != R.label or M.right_ring.label != S.label:
                raise ElaborationError(f"module {name} is over ({M.left_ring.label}, "
                                       f"{M.right_ring.label})", node)
            return M
        raise ElaborationError(f"unknown module {name!r}; builtins are {', '.join(BUILTIN_MODULES)}, "
                               f"ideal[k] and sidecar names", node)

    def ideal(self, ref, base: FiniteRing, node: Node):
        from .structure import ideal_generated, jacobson_radical, maximal_regular_ideal
        if isinstance(ref, IndexSet):
            return ref.members
        if isinstance(ref, int):
            if not 0 <= ref < base.order:
                raise ElaborationError(f"element {ref} out of range 0..{base.order - 1}", node)
            return ideal_generated(base, ref)
        if ref.name == "J":
            return jacobson_radical(base)
        if ref.name == "MR":
            return maximal_regular_ideal(base)
        if ref.name in self.sidecar.ideals:
            return [int(v) for v in self.sidecar.ideals[ref.name]]
        raise ElaborationError(f"unknown ideal {ref.name!r}", node)


def elaborate(expr, sidecar: Sidecar | None = None, dense_cap: int | None = None) -> FiniteRing:
    return Elaborator(sidecar, dense_cap).ring(expr)
