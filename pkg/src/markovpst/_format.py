"""Deterministic number formatting shared by the text, CSV and JSON writers."""

SIG_DIGITS = 12


def fmt(x: float) -> str:
    # "+ 0.0" folds -0.0 into 0.0 so outputs do not depend on cancellation order
    return format(float(x) + 0.0, f".{SIG_DIGITS}g")


def rounded(x: float) -> float:
    return float(fmt(x))
