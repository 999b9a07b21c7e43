"""A tiny exact expression language for family formulas.

Formulas are Python-syntax strings restricted to arithmetic, comparisons,
conditionals, subscripts and a whitelist of helper functions.  ``/`` is
exact rational division; results collapse back to int when integral.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from math import comb, gcd as _gcd
from typing import Any, Dict

from ..arith import is_prime, lcm_many, rad as _rad


class ExprError(ValueError):
    pass


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def _div(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero in formula")
    if isinstance(a, int) and isinstance(b, int):
        if a % b == 0:
            return a // b
        return Fraction(a, b)
    return _norm(Fraction(a) / Fraction(b))


def _flat(args):
    for a in args:
        if hasattr(a, "__iter__"):
            yield from a
        else:
            yield a


def _lcm(*args):
    return lcm_many(int(v) for v in _flat(args))


def _gcdn(*args):
    g = 0
    for v in _flat(args):
        g = _gcd(g, int(v))
    return g


def is_int(x) -> bool:
    return isinstance(x, int) or (type(x) is Fraction and x.denominator == 1)


def divides(a, b) -> bool:
    """a | b for integers; false when a is zero or either side is non-integral."""
    if not (is_int(a) and is_int(b)) or a == 0:
        return False
    return int(b) % int(a) == 0


def _prod(xs):
    r = 1
    for x in xs:
        r *= x
    return r


def _sumpow(a, cs):
    return sum(a**c for c in cs)


def _nested(start, subs, mults):
    # (...((start - subs[0]) * mults[0] - subs[1]) * mults[1] ...) - subs[-1]
    x = start - subs[0]
    for b, a in zip(subs[1:], mults):
        x = x * a - b
    return x


def _ceil(x):
    return -((-Fraction(x).numerator) // Fraction(x).denominator)


def _floor(x):
    return Fraction(x).numerator // Fraction(x).denominator


FUNCS: Dict[str, Any] = {
    "_div": _div,
    "lcm": _lcm,
    "gcd": _gcdn,
    "C": comb,
    "divides": divides,
    "is_int": is_int,
    "isprime": lambda n: is_int(n) and is_prime(int(n)),
    "rad": lambda n: _rad(int(n)),
    "prod": _prod,
    "sum": lambda xs: sum(xs),
    "len": len,
    "min": min,
    "max": max,
    "abs": abs,
    "sumpow": _sumpow,
    "nested": _nested,
    "ceil": _ceil,
    "floor": _floor,
    "range": range,
    "all": all,
    "num": lambda x: Fraction(x).numerator,
    "den": lambda x: Fraction(x).denominator,
}

_ALLOWED = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.BoolOp, ast.Compare, ast.IfExp,
    ast.Call, ast.Name, ast.Load, ast.Constant, ast.Subscript, ast.Slice,
    ast.Tuple, ast.List, ast.GeneratorExp, ast.comprehension, ast.Store,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.FloorDiv, ast.Mod, ast.Pow,
    ast.USub, ast.UAdd, ast.Not, ast.And, ast.Or,
    ast.Eq, ast.NotEq, ast.Lt, ast.LtE, ast.Gt, ast.GtE, ast.In, ast.NotIn,
)


class _DivToCall(ast.NodeTransformer):
    def visit_BinOp(self, node):
        self.generic_visit(node)
        if isinstance(node.op, ast.Div):
            return ast.copy_location(
                ast.Call(func=ast.Name(id="_div", ctx=ast.Load()), args=[node.left, node.right], keywords=[]),
                node,
            )
        return node


def compile_expr(src: str):
    """Validate and compile a formula string; returns a code object."""
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"bad formula {src!r}: {exc.msg}") from None
    for node in ast.walk(tree):
        if not isinstance(node, _ALLOWED):
            raise ExprError(f"disallowed syntax {type(node).__name__} in {src!r}")
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCS:
                raise ExprError(f"unknown function in {src!r}")
        if isinstance(node, ast.Constant) and not isinstance(node.value, int):
            raise ExprError(f"only integer literals allowed in {src!r}")
        if isinstance(node, ast.Name) and node.id.startswith("__"):
            raise ExprError(f"reserved name in {src!r}")
    tree = ast.fix_missing_locations(_DivToCall().visit(tree))
    return compile(tree, f"<formula {src}>", "eval")


_BASE = {"__builtins__": {}, **FUNCS}


def run(code, env: Dict[str, Any]):
    # one dict serves as globals so generator expressions can see the parameters
    return _norm(eval(code, {**_BASE, **env}))
