"""Exact integer power series truncated modulo x^(N+1)."""

from __future__ import annotations

from typing import Iterable


class PowerSeriesTrunc:
    """Coefficients ``c_0 .. c_N`` of a power series, all Python ints."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int], depth: int | None = None):
        cs = [int(c) for c in coeffs]
        if depth is not None:
            cs = (cs + [0] * (depth + 1))[: depth + 1]
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, depth: int) -> "PowerSeriesTrunc":
        return cls([1], depth)

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PowerSeriesTrunc):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PowerSeriesTrunc({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _common(self, other: "PowerSeriesTrunc") -> int:
        return min(self.depth, other.depth)

    def __add__(self, other):
        n = self._common(other)
        return PowerSeriesTrunc(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def __sub__(self, other):
        n = self._common(other)
        return PowerSeriesTrunc(a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1]))

    def __mul__(self, other):
        n = self._common(other)
        a, b = self.coeffs, other.coeffs
        return PowerSeriesTrunc(sum(a[j] * b[k - j] for j in range(k + 1)) for k in range(n + 1))

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])


def series_invert(s: PowerSeriesTrunc) -> PowerSeriesTrunc:
    """Multiplicative inverse modulo x^(N+1); the constant term must be ±1."""
    c0 = s.coeffs[0]
    if c0 not in (1, -1):
        raise ValueError(f"constant term {c0} is not a unit over the integers")
    out = [c0]
    for k in range(1, len(s.coeffs)):
        acc = sum(s.coeffs[j] * out[k - j] for j in range(1, k + 1))
        # c0 is its own inverse
        out.append(-c0 * acc)
    return PowerSeriesTrunc(out)
