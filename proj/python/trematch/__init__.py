"""Timed pattern matching over piecewise-constant Boolean behaviors."""

from ._trematch import (
    Behavior,
    BehaviorSyntaxError,
    Expr,
    ExprSyntaxError,
    InvariantViolation,
    Matches,
    OnlineMatcher,
    SyntaxError,
    Zone,
    match,
    parse_behavior,
    parse_expr,
    triangle,
)

__all__ = [
    "Behavior",
    "BehaviorSyntaxError",
    "Expr",
    "ExprSyntaxError",
    "InvariantViolation",
    "Matches",
    "OnlineMatcher",
    "SyntaxError",
    "Zone",
    "match",
    "parse_behavior",
    "parse_expr",
    "triangle",
]


def find(behavior, expr, **kwargs):
    """Like match(), but also accepts behavior and expression text."""
    if isinstance(behavior, str):
        behavior = parse_behavior(behavior)
    if isinstance(expr, str):
        expr = parse_expr(expr)
    return match(behavior, expr, **kwargs)


__all__.append("find")
