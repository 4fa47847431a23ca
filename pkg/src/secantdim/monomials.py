"""Monomial bases in a fixed lexicographic order, plus derivative evaluation.

Exponent vectors are plain tuples, one entry per variable, with the x-block
before the y-block. Enumeration is lexicographic, descending on the leading
variable, so column indexing is reproducible across runs and backends.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .linalg import FieldConfig

ExponentVector = tuple[int, ...]


def _exponent_vectors(nvars: int, degree: int) -> Iterator[ExponentVector]:
    if nvars == 1:
        yield (degree,)
        return
    for lead in range(degree, -1, -1):
        for tail in _exponent_vectors(nvars - 1, degree - lead):
            yield (lead,) + tail


@dataclass(frozen=True)
class GradedBasis:
    """All degree-t monomials in nvars variables."""

    nvars: int
    t: int
    monomials: tuple[ExponentVector, ...]


@dataclass(frozen=True)
class BiBasis:
    """Bidegree-(a,b) monomials on P^n x P^m, stored as (x-part, y-part)."""

    n: int
    m: int
    a: int
    b: int
    monomials: tuple[tuple[ExponentVector, ExponentVector], ...]

    def combined(self) -> tuple[ExponentVector, ...]:
        """Each pair flattened to a single exponent vector over x then y."""
        return tuple(xe + ye for xe, ye in self.monomials)


def graded_basis(nvars: int, t: int) -> GradedBasis:
    if nvars < 1 or t < 0:
        raise ValueError("need nvars >= 1 and t >= 0")
    monos = tuple(_exponent_vectors(nvars, t))
    assert len(monos) == comb(nvars - 1 + t, t)
    return GradedBasis(nvars, t, monos)


def bihomogeneous_basis(n: int, m: int, a: int, b: int) -> BiBasis:
    if n < 1 or m < 1 or a < 0 or b < 0:
        raise ValueError("need n, m >= 1 and a, b >= 0")
    xs = tuple(_exponent_vectors(n + 1, a))
    ys = tuple(_exponent_vectors(m + 1, b))
    monos = tuple((xe, ye) for xe in xs for ye in ys)
    return BiBasis(n, m, a, b, monos)


def _power_table(
    point: Sequence[int], maxdeg: int, cfg: FieldConfig
) -> list[list[int]]:
    """table[v][e] = point[v]^e, reduced when the backend is modular."""
    table = []
    for coord in point:
        value = int(coord)
        if cfg.is_modular:
            value %= cfg.modulus
        powers = [1]
        for _ in range(maxdeg):
            nxt = powers[-1] * value
            powers.append(nxt % cfg.modulus if cfg.is_modular else nxt)
        table.append(powers)
    return table


def _eval_from_table(
    mono: ExponentVector, table: list[list[int]], cfg: FieldConfig
) -> int:
    value = 1
    for v, e in enumerate(mono):
        if e:
            value *= table[v][e]
            if cfg.is_modular:
                value %= cfg.modulus
    return value


def _partial_from_table(
    mono: ExponentVector, var: int, table: list[list[int]], cfg: FieldConfig
) -> int:
    e = mono[var]
    if e == 0:
        return 0
    value = e
    for v, ev in enumerate(mono):
        if v == var:
            ev -= 1
        if ev:
            value *= table[v][ev]
            if cfg.is_modular:
                value %= cfg.modulus
    if cfg.is_modular:
        value %= cfg.modulus
    return value


def monomial_eval(
    mono: ExponentVector, point: Sequence[int], cfg: FieldConfig
) -> int:
    """Value of the monomial at the point."""
    if len(mono) != len(point):
        raise ValueError("point length does not match the variable count")
    table = _power_table(point, max(mono, default=0), cfg)
    return _eval_from_table(mono, table, cfg)


def partial_eval(
    mono: ExponentVector, var: int, point: Sequence[int], cfg: FieldConfig
) -> int:
    """First partial derivative with respect to one variable, evaluated."""
    if len(mono) != len(point):
        raise ValueError("point length does not match the variable count")
    if not 0 <= var < len(mono):
        raise ValueError("variable index out of range")
    table = _power_table(point, max(mono, default=0), cfg)
    return _partial_from_table(mono, var, table, cfg)


def evaluation_row(
    monomials: Sequence[ExponentVector], point: Sequence[int], cfg: FieldConfig
) -> list[int]:
    """Values of every monomial at one point, in basis order."""
    maxdeg = max((max(mono) for mono in monomials), default=0)
    table = _power_table(point, maxdeg, cfg)
    return [_eval_from_table(mono, table, cfg) for mono in monomials]


def derivative_rows(
    monomials: Sequence[ExponentVector], point: Sequence[int], cfg: FieldConfig
) -> list[list[int]]:
    """One row per variable: each monomial's partial derivative at the point."""
    maxdeg = max((max(mono) for mono in monomials), default=0)
    table = _power_table(point, maxdeg, cfg)
    return [
        [_partial_from_table(mono, var, table, cfg) for mono in monomials]
        for var in range(len(point))
    ]
