"""CPLEX LP-format export of the binary model."""
from __future__ import annotations

from ..model import Instance

WRAP = 78


def _terms(coefs) -> list[str]:
    out = []
    for idx, c in coefs:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = f"x{idx}" if mag == 1 else f"{mag} x{idx}"
        out.append(f"{sign} {body}")
    if out and out[0].startswith("+ "):
        out[0] = out[0][2:]
    return out


def _row(name: str, terms: list[str], tail: str = "") -> list[str]:
    """Render ``name: terms tail`` wrapped into continuation lines."""
    lines = []
    line = f" {name}:"
    for piece in terms + ([tail] if tail else []):
        if len(line) + 1 + len(piece) > WRAP and line.strip() != f"{name}:":
            lines.append(line)
            line = "  "
            line += piece
        else:
            line += " " + piece
    lines.append(line)
    return lines


def export_ilp(instance: Instance) -> str:
    """Binary program: maximize profit under capacity and one balance row per color.

    The color row for ``c`` reads ``sum_{i in c} x_i - sum_{i not in c} x_i <= 1``.
    Output is byte-stable. An instance without items gets a constant objective
    and no constraint rows, since LP format has no empty rows.
    """
    n = instance.n
    lines = ["\\ colored knapsack", f"\\ n={n} m={instance.m} b={instance.b}", "Maximize"]
    if n == 0:
        lines.append(" obj: 0")
    else:
        lines += _row("obj", _terms((i, p) for i, p in enumerate(instance.profits, start=1)))
    lines.append("Subject To")
    if n:
        lines += _row("cap", _terms((i, w) for i, w in enumerate(instance.weights, start=1)), f"<= {instance.b}")
        for c in range(1, instance.m + 1):
            coefs = ((i, 1 if k == c else -1) for i, k in enumerate(instance.colors, start=1))
            lines += _row(f"col_{c}", _terms(coefs), "<= 1")
    lines.append("Binary")
    names = [f"x{i}" for i in range(1, n + 1)]
    for start in range(0, n, 10):
        lines.append(" " + " ".join(names[start : start + 10]))
    lines.append("End")
    return "\n".join(lines) + "\n"
