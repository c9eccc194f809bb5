from __future__ import annotations

from dataclasses import dataclass, field


class MalformedInputError(ValueError):
    """Structurally broken input (wrong shape, entry out of range, bad syntax).

    Kept distinct from axiom failures, which are reported, not raised.
    """


@dataclass
class Report:
    """Outcome of an axiom check.

    ``violations`` holds tuples whose first item names the failed condition
    and whose remaining items are the (1-based) witnesses.
    """

    kind: str
    violations: list[tuple] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def add(self, violation: tuple) -> None:
        self.violations.append(violation)

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)

    def sorted(self) -> "Report":
        return Report(self.kind, sorted(self.violations, key=lambda v: (str(v[0]), v[1:])))

    def summary(self, limit: int = 5) -> str:
        if self.valid:
            return f"{self.kind}: valid"
        shown = ", ".join(_fmt(v) for v in self.violations[:limit])
        more = len(self.violations) - limit
        tail = f" (+{more} more)" if more > 0 else ""
        return f"{self.kind}: {len(self.violations)} violation(s): {shown}{tail}"

    def lines(self) -> list[str]:
        if self.valid:
            return [f"{self.kind}: valid"]
        return [f"{self.kind}: INVALID ({len(self.violations)} violations)"] + [
            "  " + _fmt(v) for v in self.violations
        ]


def _fmt(v: tuple) -> str:
    return f"{v[0]}{tuple(v[1:])}"
