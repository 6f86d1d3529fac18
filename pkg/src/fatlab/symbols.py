"""Structural types of compact Lie algebras: simple summands plus a torus.

A :class:`TypeSum` is the normal form used for every comparison: low-rank
coincidences are folded (``B1 = C1 = A1``, ``C2 = B2``, ``D2 = A1 + A1``,
``D3 = A3``, ``D1 = T``) and rank-0 terms disappear.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

FAMILY_ORDER = {"A": 0, "B": 1, "C": 2, "D": 3, "E": 4, "F": 5, "G": 6}

_EXCEPTIONAL_DIM = {("G", 2): 14, ("F", 4): 52, ("E", 6): 78, ("E", 7): 133, ("E", 8): 248}


def simple_dim(family: str, r: int) -> int:
    if family == "A":
        return r * (r + 2)
    if family in ("B", "C"):
        return r * (2 * r + 1)
    if family == "D":
        return r * (2 * r - 1)
    return _EXCEPTIONAL_DIM[(family, r)]


def normalize_simple(family: str, r: int) -> tuple[tuple[tuple[str, int], ...], int]:
    """Fold a single ``(family, rank)`` term into canonical simple terms and a torus count."""
    if r < 0:
        raise ValueError(f"negative rank in {family}{r}")
    if r == 0:
        return (), 0
    if family in ("B", "C") and r == 1:
        return (("A", 1),), 0
    if family == "C" and r == 2:
        return (("B", 2),), 0
    if family == "D":
        if r == 1:
            return (), 1
        if r == 2:
            return (("A", 1), ("A", 1)), 0
        if r == 3:
            return (("A", 3),), 0
    return ((family, r),), 0


@dataclass(frozen=True)
class TypeSum:
    """Sorted simple summands ``(family, rank)`` and the dimension of the centre."""

    simple: tuple = ()
    torus: int = 0

    @staticmethod
    def build(terms, torus: int = 0) -> "TypeSum":
        simple = []
        for fam, r in terms:
            s, t = normalize_simple(fam, r)
            simple.extend(s)
            torus += t
        simple.sort(key=lambda x: (FAMILY_ORDER[x[0]], -x[1]))
        return TypeSum(tuple(simple), torus)

    @property
    def dim(self) -> int:
        return sum(simple_dim(f, r) for f, r in self.simple) + self.torus

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.simple) + self.torus

    @property
    def semisimple(self) -> bool:
        return self.torus == 0

    def __add__(self, other: "TypeSum") -> "TypeSum":
        return TypeSum.build(list(self.simple) + list(other.simple), self.torus + other.torus)

    def __str__(self) -> str:
        parts = [f"{f}{r}" for f, r in self.simple] + ["T"] * self.torus
        return "⊕".join(parts) if parts else "0"


_SUM_TERM = re.compile(r"^\s*([ABCDEFG])\s*(?:bar)?\s*(\d+)\s*$|^\s*(T|R|R1|Ra)\s*$", re.IGNORECASE)


def parse_typesum(text: str) -> TypeSum:
    """Parse ``"C3+A1"``, ``"A1⊕T"``, ``"0"`` and the like (decorations dropped)."""
    text = text.strip()
    if text in ("", "0"):
        return TypeSum()
    terms, torus = [], 0
    for t in re.split(r"\+|⊕", text):
        m = _SUM_TERM.match(t)
        if not m:
            raise ValueError(f"cannot parse type term {t!r}")
        if m.group(3):
            torus += 1
        else:
            terms.append((m.group(1).upper(), int(m.group(2))))
    return TypeSum.build(terms, torus)
