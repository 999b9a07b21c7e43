"""Arithmetic progressions {m*t - g : t >= t0} of target denominators."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The progression m*t - g for t >= t0, stored with 0 <= g < m."""

    m: int
    g: int
    t0: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")
        if not 0 <= self.g < self.m:
            raise ValueError("offset must satisfy 0 <= g < m; use ResidueClass.of")

    @classmethod
    def of(cls, m: int, g: int, t0: int = 1) -> "ResidueClass":
        """Normalize any m*t - g (g possibly negative or >= m) keeping the same set."""
        if m < 1:
            raise ValueError(f"modulus must be >= 1, got {m}")
        shift, g2 = divmod(g, m)
        # m*t - g = m*(t - shift) - g2
        return cls(m, g2, t0 - shift)

    @property
    def residue(self) -> int:
        return (-self.g) % self.m

    @property
    def first(self) -> int:
        return self.m * self.t0 - self.g

    def at(self, t: int) -> int:
        return self.m * t - self.g

    def __contains__(self, n: int) -> bool:
        return (n + self.g) % self.m == 0 and n >= self.first

    def members(self, limit: int):
        """Members up to limit, ascending."""
        start = self.first
        if start < 1:
            start += self.m * -(-(1 - start) // self.m)
        return range(start, limit + 1, self.m)

    def render(self) -> str:
        body = f"{self.m}t" if self.g == 0 else f"{self.m}t-{self.g}"
        return body if self.t0 == 1 else f"{body} (t >= {self.t0})"

    def __str__(self) -> str:
        return self.render()

    def to_json(self):
        return {"m": self.m, "g": self.g, "t0": self.t0, "form": self.render()}
