"""Empirical sign resolution for bilinear recurrences.

Several displayed recurrences are only pinned down by the expansion data
up to coefficient signs (and in one case up to which factor carries the
cube).  A checker here takes every candidate reading, keeps those that
hold on every window, and reports the survivors; a relation counts as
resolved when the survivors agree on a single numeric coefficient pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional


@dataclass(frozen=True)
class ResolvedRelation:
    """Survivors of checking lhs = c1 * m + c2 * k under all sign variants.

    ok means the surviving candidates share one coefficient pair; forms
    names them (empty when nothing validates).
    """

    ok: bool
    coeffs: Optional[tuple[Fraction, Fraction]]
    forms: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def resolve_bilinear(
    candidates: dict[str, tuple[Fraction, Fraction]],
    windows: Iterable[tuple[Fraction, Fraction, Fraction]],
) -> ResolvedRelation:
    """Resolve lhs = c1 * m + c2 * k over windows of (lhs, m, k) values."""
    windows = list(windows)
    if not windows:
        raise ValueError("no windows to resolve against")
    surviving = {
        name: pair
        for name, pair in candidates.items()
        if all(lhs == pair[0] * m + pair[1] * k for lhs, m, k in windows)
    }
    pairs = set(surviving.values())
    if len(pairs) != 1:
        return ResolvedRelation(ok=False, coeffs=None, forms=tuple(sorted(surviving)))
    return ResolvedRelation(ok=True, coeffs=pairs.pop(), forms=tuple(sorted(surviving)))
