"""Parse scalar literals such as ``3/5``, ``9.7``, ``1 + sqrt(2)/2`` or ``pi/4``.

Python's own expression grammar is reused through :mod:`ast`; only rational
literals, the four operations, integer powers, ``sqrt`` and ``pi`` are let through.
"""
from __future__ import annotations

import ast
from fractions import Fraction

from .scalar import PI, Scalar, sqrt

__all__ = ["ExprError", "parse_scalar"]


class ExprError(ValueError):
    def __init__(self, message: str, col: int = 0):
        super().__init__(message)
        self.col = col


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_scalar(text: str) -> Scalar:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ExprError(f"bad scalar expression {text!r}", (exc.offset or 1) - 1) from None
    return _eval(tree.body, text.strip())


def _eval(node: ast.AST, src: str) -> Scalar:
    col = getattr(node, "col_offset", 0)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ExprError(f"unexpected literal {node.value!r}", col)
        if isinstance(node.value, float):
            # keep the decimal exactly as written
            return Scalar(Fraction(ast.get_source_segment(src, node)))
        return Scalar(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, src)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if not (isinstance(exp, ast.Constant) and type(exp.value) is int):
                raise ExprError("only integer powers are allowed", col)
            return _eval(node.left, src) ** exp.value
        op = _BINOPS.get(type(node.op))
        if op is None:
            raise ExprError("unsupported operator", col)
        left, right = _eval(node.left, src), _eval(node.right, src)
        if isinstance(node.op, ast.Div) and right.is_zero_form():
            raise ExprError("division by zero", col)
        return op(left, right)
    if isinstance(node, ast.Name):
        if node.id == "pi":
            return PI
        raise ExprError(f"unknown name {node.id!r} in scalar", col)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "sqrt":
        if len(node.args) != 1 or node.keywords:
            raise ExprError("sqrt takes one argument", col)
        try:
            return sqrt(_eval(node.args[0], src))
        except ValueError as exc:
            raise ExprError(str(exc), col) from None
    raise ExprError("unsupported expression", col)
