"""Generating polynomials of orbits, truncated at degree n.

For an orbit ``O`` of GF(q)^n, ``G_O(x) = prod_a (1 + a x)^O(a)`` and the
coefficient of ``x^j`` is the value of the j-th elementary symmetric
polynomial on the orbit.  Besides the scalar operations, this module builds
:class:`OrbitTable`, the coefficient matrix of every orbit of Pi_{q,n} at
once, which the exhaustive searches group on.
"""

from __future__ import annotations

from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatch, TruncationMismatch
from .gf import GF
from .orbits import DEFAULT_CAP, OrbitMultiplicity, check_cap, orbit_count


def binom_mod_p(n: int, k: int, p: int) -> int:
    """Binomial coefficient modulo a prime, digit by digit (Lucas)."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        num = den = 1
        for i in range(ki):
            num = num * (ni - i) % p
            den = den * (i + 1) % p
        result = result * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return result


@dataclass(frozen=True)
class TruncatedSeries:
    field: GF
    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != self.n + 1:
            raise ValueError(f"need {self.n + 1} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j] if 0 <= j <= self.n else 0


def _mul_trunc(field: GF, f: Sequence[int], g: Sequence[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, a in enumerate(f):
        if not a or i > n:
            continue
        for j, b in enumerate(g[: n + 1 - i]):
            if b:
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return out


def binomial_power(field: GF, a: int, c: int, n: int) -> list[int]:
    """Coefficients of ``(1 + a x)^c`` up to degree ``n``."""
    out = [0] * (n + 1)
    power = 1
    for i in range(min(c, n) + 1):
        b = binom_mod_p(c, i, field.p)
        if b:
            out[i] = field.mul(field.embed_int(b), power)
        power = field.mul(power, a)
    return out


def gen_poly(orbit: OrbitMultiplicity) -> TruncatedSeries:
    field, n = orbit.field, orbit.n
    coeffs = [1] + [0] * n
    for a, c in orbit.items():
        coeffs = _mul_trunc(field, coeffs, binomial_power(field, a, c, n), n)
    return TruncatedSeries(field, n, tuple(coeffs))


def gen_poly_naive(orbit: OrbitMultiplicity) -> TruncatedSeries:
    """Same as :func:`gen_poly`, one linear factor at a time."""
    field, n = orbit.field, orbit.n
    coeffs = [1] + [0] * n
    for a, c in orbit.items():
        for _ in range(c):
            coeffs = _mul_trunc(field, coeffs, [1, a], n)
    return TruncatedSeries(field, n, tuple(coeffs))


def s_value(orbit: OrbitMultiplicity, k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    return gen_poly(orbit)[k]


def signature(orbit: OrbitMultiplicity, degrees: Iterable[int]) -> tuple[int, ...]:
    g = gen_poly(orbit)
    return tuple(g[d] for d in sorted(set(degrees)))


def _check_compatible(f: TruncatedSeries, g: TruncatedSeries) -> None:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field!r} vs {g.field!r}")
    if f.n != g.n:
        raise TruncationMismatch(f"truncation {f.n} vs {g.n}")


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(f, g)
    return TruncatedSeries(f.field, f.n, tuple(_mul_trunc(f.field, f.coeffs, g.coeffs, f.n)))


def series_pow_ppow(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """``f ** (p**k)``: in characteristic p this only spreads and Frobenius-twists coefficients."""
    if k < 0:
        raise ValueError("k must be non-negative")
    step = f.field.p**k
    out = [0] * (f.n + 1)
    for j, c in enumerate(f.coeffs):
        if j * step > f.n:
            break
        out[j * step] = f.field.pow(c, step)
    return TruncatedSeries(f.field, f.n, tuple(out))


def retruncate(f: TruncatedSeries, m: int) -> TruncatedSeries:
    coeffs = list(f.coeffs[: m + 1]) + [0] * max(0, m - f.n)
    return TruncatedSeries(f.field, m, tuple(coeffs))


# --- vectorized counterparts ----------------------------------------------

def conv_rows(field: GF, f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Row-wise product of two coefficient matrices, truncated to their width."""
    width = f.shape[1]
    if field.e == 1:
        out = np.zeros(f.shape, dtype=np.int64)
        for i in range(width):
            fi = f[:, i]
            if not fi.any():
                continue
            for j in range(width - i):
                out[:, i + j] += fi * g[:, j]
        return out % field.p
    out = np.zeros(f.shape, dtype=np.int64)
    for i in range(width):
        fi = f[:, i]
        if not fi.any():
            continue
        for j in range(width - i):
            out[:, i + j] = field.vadd(out[:, i + j], field.vmul(fi, g[:, j]))
    return out


def esym_rows(field: GF, values: np.ndarray, degree: int) -> np.ndarray:
    """Elementary symmetric values ``s_0..s_degree`` of each row of ``values``."""
    values = np.asarray(values, dtype=np.int64)
    rows, length = values.shape
    out = np.zeros((rows, degree + 1), dtype=np.int64)
    out[:, 0] = 1
    for i in range(length):
        y = values[:, i]
        for k in range(min(i + 1, degree), 0, -1):
            out[:, k] = field.vadd(out[:, k], field.vmul(y, out[:, k - 1]))
    return out


def _power_matrix(field: GF, a: int, cmax: int, n: int) -> np.ndarray:
    return np.array([binomial_power(field, a, c, n) for c in range(cmax + 1)], dtype=np.int64)


def _layered(field: GF, n: int, budget: int, elements: Sequence[int]):
    """Counts and coefficients of all count vectors on ``elements`` with sum <= budget."""
    counts = np.zeros((1, 0), dtype=np.int64)
    coeffs = np.zeros((1, n + 1), dtype=np.int64)
    coeffs[0, 0] = 1
    used = np.zeros(1, dtype=np.int64)
    for a in elements:
        table = _power_matrix(field, a, budget, n)
        reps = budget - used + 1
        parent = np.repeat(np.arange(len(used)), reps)
        starts = np.cumsum(reps) - reps
        c = np.arange(int(reps.sum())) - np.repeat(starts, reps)
        coeffs = conv_rows(field, coeffs[parent], table[c])
        counts = np.column_stack([counts[parent], c])
        used = used[parent] + c
    return counts, coeffs


def _shard(args):
    field, n, c1 = args
    counts, coeffs = _layered(field, n, n - c1, range(2, field.q))
    head = _power_matrix(field, 1, c1, n)[c1]
    coeffs = conv_rows(field, coeffs, np.broadcast_to(head, coeffs.shape))
    counts = np.column_stack([np.full(len(counts), c1, dtype=np.int64), counts])
    return counts, coeffs


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """Row ``i``: the i-th orbit of Pi_{q,n} in enumeration order and its G coefficients."""

    field: GF
    n: int
    counts: np.ndarray
    coeffs: np.ndarray

    def __len__(self) -> int:
        return len(self.counts)

    def orbit(self, i: int) -> OrbitMultiplicity:
        return OrbitMultiplicity(self.field, self.n, tuple(int(c) for c in self.counts[i]))

    def column(self, degree: int) -> np.ndarray:
        if 0 <= degree <= self.n:
            return self.coeffs[:, degree]
        return np.zeros(len(self), dtype=self.coeffs.dtype)


def build_table(field: GF, n: int, workers: int) -> OrbitTable:
    if workers > 1 and field.q > 2 and n > 0:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_shard, [(field, n, c1) for c1 in range(n + 1)]))
        counts = np.concatenate([p[0] for p in parts])
        coeffs = np.concatenate([p[1] for p in parts])
    else:
        counts, coeffs = _layered(field, n, n, range(1, field.q))
    return OrbitTable(field, n, counts.astype(np.int32), coeffs.astype(np.int32))


_TABLE_CACHE: OrderedDict[tuple[GF, int], OrbitTable] = OrderedDict()
_TABLE_CACHE_SIZE = 4


def orbit_table(field: GF, n: int, *, cap: int = DEFAULT_CAP, workers: int = 1) -> OrbitTable:
    """The table for Pi_{q,n}; identical for every worker count."""
    if n < 0:
        raise ValueError("n must be non-negative")
    check_cap(orbit_count(field.q, n), cap)
    key = (field, n)
    table = _TABLE_CACHE.get(key)
    if table is None:
        table = build_table(field, n, workers)
        _TABLE_CACHE[key] = table
        while len(_TABLE_CACHE) > _TABLE_CACHE_SIZE:
            _TABLE_CACHE.popitem(last=False)
    else:
        _TABLE_CACHE.move_to_end(key)
    return table
