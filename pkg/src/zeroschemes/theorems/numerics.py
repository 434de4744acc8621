"""Integer bookkeeping used by the inductions: decompositions and boundary counts."""

from __future__ import annotations


def numlem_decompose(d: int) -> tuple[int, int]:
    """The unique ``(a, b)`` with ``a in {0, 1, 2}``, ``b >= 1`` and ``d + 1 = 2a + 3b``.

    Raises ``ValueError`` for ``d < 4``.  The returned pair also satisfies
    ``2a + b <= d`` and ``(d + 2)(d + 1) // 8 >= a + b``; both are checked.
    """
    if d < 4:
        raise ValueError(f"d must be >= 4, got {d}")
    for a in (0, 1, 2):
        rest = d + 1 - 2 * a
        if rest % 3 == 0 and rest // 3 >= 1:
            b = rest // 3
            break
    else:  # pragma: no cover - 2 and 3 are coprime
        raise AssertionError(d)
    if not (2 * a + b <= d and (d + 2) * (d + 1) // 8 >= a + b):
        raise AssertionError(f"inequalities fail for d={d}: a={a}, b={b}")
    return a, b


def quarter_bounds(n: int) -> tuple[int, int]:
    """``(floor(n / 4), ceil(n / 4))``: tile or 2-square counts straddling ``n``."""
    return n // 4, -(-n // 4)


def double_point_bounds(n: int, s: int) -> tuple[int, int]:
    """``(floor((n - 4s) / 3), ceil((n - 4s) / 3))`` clamped at zero."""
    q = n - 4 * s
    return max(0, q // 3), max(0, -(-q // 3))
