"""Exact invariant values: sums of ``C u^E`` terms and writhe polynomials."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class InvariantPolynomial:
    """Finite multiset of exponents, printed like ``6+3u^9``."""

    terms: tuple[tuple[int, int], ...]  # (exponent, multiplicity), ascending

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "InvariantPolynomial":
        return cls.from_mapping(Counter(exponents))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "InvariantPolynomial":
        if any(v < 0 for v in mapping.values()):
            raise ValueError("multiplicities must be nonnegative")
        return cls(tuple(sorted((int(e), int(c)) for e, c in mapping.items() if c)))

    @classmethod
    def parse(cls, text: str) -> "InvariantPolynomial":
        text = text.replace(" ", "")
        if text == "0":
            return cls(())
        out: Counter = Counter()
        for term in text.split("+"):
            m = re.fullmatch(r"(\d*)(?:u(?:\^(-?\d+))?)?", term)
            if not m or not term:
                raise ValueError(f"bad polynomial term {term!r}")
            coef, exp = m.groups()
            if "u" in term:
                out[int(exp) if exp is not None else 1] += int(coef) if coef else 1
            else:
                out[0] += int(coef)
        return cls.from_mapping(out)

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def total(self) -> int:
        """Value at ``u = 1``."""
        return sum(c for _, c in self.terms)

    def __add__(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        out = Counter(self.as_dict())
        out.update(other.as_dict())
        return InvariantPolynomial.from_mapping(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{'' if c == 1 else c}u^{e}")
        return "+".join(parts)


@dataclass(frozen=True)
class WrithePolynomial:
    """Labeling counts keyed by framing vector, printed like ``4q1q2``."""

    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[tuple[int, ...], int]) -> "WrithePolynomial":
        return cls(tuple(sorted((tuple(w), int(c)) for w, c in mapping.items() if c)))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.terms)

    def total(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.terms:
            mono = "".join(
                f"q{i}" if e == 1 else f"q{i}^{e}" for i, e in enumerate(w, 1) if e
            )
            coef = str(c) if (c != 1 or not mono) else ""
            parts.append(coef + mono)
        return "+".join(parts)
