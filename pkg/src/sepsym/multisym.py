"""Multisymmetric separating families over GF(q).

An S_n-orbit of ``(GF(q)^n)^m`` is a size-n multiset of points of
``GF(q)^m``.  Points are indexed in mixed radix base q with the first
coordinate most significant.  Three families are provided: the main family
``s_{j p^k}(x^alpha)`` with small exponents, the family ``s_k(x^alpha)`` with
``k |alpha| <= n`` and the cheap polarizations of ``s_1..s_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb, gcd
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import ParameterMismatch
from .gf import GF
from .orbits import OrbitMultiplicity, check_cap
from .separating import Separation, ceil_log, first_collision, group_ids
from .series import esym_rows, gen_poly

DEFAULT_MULTI_CAP = 10**6

Point = tuple[int, ...]


def point_index(field: GF, point: Sequence[int]) -> int:
    idx = 0
    for u in point:
        idx = idx * field.q + u
    return idx


def point_of(field: GF, m: int, idx: int) -> Point:
    out = []
    for _ in range(m):
        idx, u = divmod(idx, field.q)
        out.append(u)
    return tuple(reversed(out))


@dataclass(frozen=True, repr=False)
class MultiOrbit:
    """Multiset of ``n`` points of ``GF(q)^m``, stored as sorted ``(point, count)`` pairs."""

    field: GF
    m: int
    n: int
    counts: tuple[tuple[Point, int], ...]

    def __post_init__(self):
        merged: dict[Point, int] = {}
        for point, c in self.counts:
            point = tuple(int(u) for u in point)
            if len(point) != self.m or any(not 0 <= u < self.field.q for u in point):
                raise ValueError(f"{point} is not a point of GF({self.field.q})^{self.m}")
            if c < 0:
                raise ValueError("counts must be non-negative")
            merged[point] = merged.get(point, 0) + int(c)
        items = sorted(
            ((pt, c) for pt, c in merged.items() if c), key=lambda it: point_index(self.field, it[0])
        )
        object.__setattr__(self, "counts", tuple(items))
        if sum(c for _, c in items) != self.n:
            raise ValueError(f"counts must sum to n={self.n}")

    @classmethod
    def from_points(cls, field: GF, points: Sequence[Sequence[int]]) -> MultiOrbit:
        m = len(points[0]) if points else 0
        return cls(field, m, len(points), tuple((tuple(pt), 1) for pt in points))

    def points(self) -> list[Point]:
        out = []
        for pt, c in self.counts:
            out.extend([pt] * c)
        return out

    def literal(self) -> str:
        body = ";".join(f"({','.join(map(str, pt))}):{c}" for pt, c in self.counts)
        return f"{body}/{self.n}"

    def __repr__(self):
        return f"MultiOrbit({self.field!r}, m={self.m}, {self.literal()})"


def parse_multi_orbit(field: GF, m: int, text: str) -> MultiOrbit:
    """Parse ``(i1,...,im):c;.../n``."""
    body, sep, n_text = text.strip().rpartition("/")
    if not sep:
        raise ValueError(f"multi-orbit literal {text!r} lacks '/n'")
    items = []
    for part in filter(None, (s.strip() for s in body.split(";"))):
        pt_text, colon, c_text = part.rpartition(":")
        if not colon or not (pt_text.startswith("(") and pt_text.endswith(")")):
            raise ValueError(f"bad multi-orbit entry {part!r}")
        point = tuple(int(u) for u in pt_text[1:-1].split(","))
        items.append((point, int(c_text)))
    return MultiOrbit(field, m, int(n_text), tuple(items))


def multi_orbit_count(q: int, m: int, n: int) -> int:
    return comb(q**m + n - 1, n)


def _orbit_point_rows(field: GF, m: int, n: int) -> Iterator[tuple[int, ...]]:
    return combinations_with_replacement(range(field.q**m), n)


def enumerate_multi_orbits(
    field: GF, m: int, n: int, *, cap: int = DEFAULT_MULTI_CAP
) -> Iterator[MultiOrbit]:
    """All size-n multisets of points, lexicographic in sorted point indices."""
    check_cap(multi_orbit_count(field.q, m, n), cap)

    def gen():
        for row in _orbit_point_rows(field, m, n):
            yield MultiOrbit(field, m, n, tuple((point_of(field, m, i), 1) for i in row))

    return gen()


# --- family members ------------------------------------------------------------

@dataclass(frozen=True)
class Main:
    j: int
    k: int
    alpha: tuple[int, ...]

    def degree(self, p: int) -> int:
        return self.j * p**self.k

    def to_json(self) -> dict:
        return {"family": "main", "j": self.j, "k": self.k, "alpha": list(self.alpha)}


@dataclass(frozen=True)
class Amitsur:
    k: int
    alpha: tuple[int, ...]

    def to_json(self) -> dict:
        return {"family": "amitsur", "k": self.k, "alpha": list(self.alpha)}


@dataclass(frozen=True)
class Cheap:
    k: int
    d: int

    def to_json(self) -> dict:
        return {"family": "cheap", "k": self.k, "d": self.d}


FamilyMember = Union[Main, Amitsur, Cheap]


def _gcd(alpha: Sequence[int]) -> int:
    g = 0
    for a in alpha:
        g = gcd(g, a)
    return g


def _bounded_vectors(m: int, total: int) -> Iterator[tuple[int, ...]]:
    """All of Z_{>=0}^m with coordinate sum <= total, in lexicographic order."""
    if m == 0:
        yield ()
        return
    for a in range(total + 1):
        for rest in _bounded_vectors(m - 1, total - a):
            yield (a, *rest)


def family_main(field: GF, m: int, n: int) -> list[Main]:
    q, p = field.q, field.p
    members = []
    for alpha in product(range(q), repeat=m):
        size = sum(alpha)
        if not 1 <= size <= n or _gcd(alpha) != 1:
            continue
        k = 0
        while p**k * size <= n:
            members.extend(Main(j, k, alpha) for j in range(1, q))
            k += 1
    return members


def family_amitsur(m: int, n: int) -> list[Amitsur]:
    members = []
    for alpha in _bounded_vectors(m, n):
        size = sum(alpha)
        if size == 0 or _gcd(alpha) != 1:
            continue
        members.extend(Amitsur(k, alpha) for k in range(1, n // size + 1))
    return members


def family_cheap(m: int, n: int) -> list[Cheap]:
    return [Cheap(k, d) for k in range(1, n + 1) for d in range((m - 1) * n + 1)]


FAMILIES = ("main", "amitsur", "cheap")


def family(name: str, field: GF, m: int, n: int) -> list[FamilyMember]:
    if name == "main":
        return family_main(field, m, n)
    if name == "amitsur":
        return family_amitsur(m, n)
    if name == "cheap":
        return family_cheap(m, n)
    raise ValueError(f"unknown family {name!r}")


# --- evaluation ----------------------------------------------------------------

def monomial_value(field: GF, point: Sequence[int], alpha: Sequence[int]) -> int:
    value = 1
    for u, a in zip(point, alpha):
        value = field.mul(value, field.pow(u, a))
    return value


def power_substitute(orbit: MultiOrbit, alpha: Sequence[int]) -> OrbitMultiplicity:
    """The orbit of the vector ``(prod_j u_j^alpha_j)`` over the points ``u``."""
    if len(alpha) != orbit.m:
        raise ParameterMismatch(f"alpha has length {len(alpha)}, expected {orbit.m}")
    field = orbit.field
    counts = [0] * (field.q - 1)
    for pt, c in orbit.counts:
        y = monomial_value(field, pt, alpha)
        if y:
            counts[y - 1] += c
    return OrbitMultiplicity(field, orbit.n, tuple(counts))


def cheap_lambda_poly(orbit: MultiOrbit, k: int) -> list[int]:
    """``s_k`` of the entries ``u_1 + u_2 l + ... + u_m l^(m-1)`` as a polynomial in ``l``."""
    field, n, m = orbit.field, orbit.n, orbit.m
    width = (m - 1) * n + 1
    poly = [[0] * width for _ in range(n + 1)]
    poly[0][0] = 1
    done = 0
    for pt in orbit.points():
        done += 1
        for t in range(min(done, n), 0, -1):
            prev, cur = poly[t - 1], poly[t]
            for shift, u in enumerate(pt):
                if not u:
                    continue
                for d in range(width - shift):
                    if prev[d]:
                        cur[d + shift] = field.add(cur[d + shift], field.mul(u, prev[d]))
    return poly[k] if 0 <= k <= n else [0] * width


def evaluate_member(member: FamilyMember, orbit: MultiOrbit) -> int:
    field = orbit.field
    if isinstance(member, Cheap):
        if not 1 <= member.k <= orbit.n or not 0 <= member.d <= (orbit.m - 1) * orbit.n:
            raise ParameterMismatch(f"{member} does not fit m={orbit.m}, n={orbit.n}")
        return cheap_lambda_poly(orbit, member.k)[member.d]
    substituted = power_substitute(orbit, member.alpha)
    degree = member.degree(field.p) if isinstance(member, Main) else member.k
    return gen_poly(substituted)[degree]


def _point_coords(field: GF, m: int) -> np.ndarray:
    return np.array([point_of(field, m, i) for i in range(field.q**m)], dtype=np.int64).reshape(
        field.q**m, m
    )


def member_matrix(
    field: GF, m: int, n: int, members: Sequence[FamilyMember], rows: np.ndarray
) -> np.ndarray:
    """Values of each member (columns) on each multi-orbit given as a row of point indices."""
    coords = _point_coords(field, m)
    out = np.zeros((len(rows), len(members)), dtype=np.int64)
    esym_cache: dict[tuple[int, ...], np.ndarray] = {}
    cheap_poly = None
    for col, member in enumerate(members):
        if isinstance(member, Cheap):
            if cheap_poly is None:
                cheap_poly = _cheap_rows(field, m, n, coords, rows)
            out[:, col] = cheap_poly[:, member.k, member.d]
            continue
        alpha = member.alpha
        if len(alpha) != m:
            raise ParameterMismatch(f"alpha has length {len(alpha)}, expected {m}")
        if alpha not in esym_cache:
            values = np.ones(len(coords), dtype=np.int64)
            for j, a in enumerate(alpha):
                values = field.vmul(values, field.vpow(coords[:, j], a))
            esym_cache[alpha] = esym_rows(field, values[rows], n)
        degree = member.degree(field.p) if isinstance(member, Main) else member.k
        if degree <= n:
            out[:, col] = esym_cache[alpha][:, degree]
    return out


def _cheap_rows(field: GF, m: int, n: int, coords: np.ndarray, rows: np.ndarray) -> np.ndarray:
    width = (m - 1) * n + 1
    poly = np.zeros((len(rows), n + 1, width), dtype=np.int64)
    poly[:, 0, 0] = 1
    for i in range(rows.shape[1]):
        u = coords[rows[:, i]]
        for t in range(min(i + 1, n), 0, -1):
            acc = poly[:, t, :]
            for shift in range(m):
                term = field.vmul(u[:, shift : shift + 1], poly[:, t - 1, : width - shift])
                acc[:, shift:] = field.vadd(acc[:, shift:], term)
            poly[:, t, :] = acc
    return poly


@dataclass(frozen=True)
class MultiWitness:
    v: MultiOrbit
    w: MultiOrbit

    def to_json(self) -> dict:
        return {
            "q": self.v.field.q,
            "m": self.v.m,
            "n": self.v.n,
            "kind": "collision",
            "v": self.v.literal(),
            "w": self.w.literal(),
        }


def is_separating_multi(
    field: GF, m: int, n: int, members: Sequence[FamilyMember], *, cap: int = DEFAULT_MULTI_CAP
) -> Separation:
    check_cap(multi_orbit_count(field.q, m, n), cap)
    rows = np.array(list(_orbit_point_rows(field, m, n)), dtype=np.int64).reshape(-1, n)
    pair = first_collision(group_ids(member_matrix(field, m, n, members, rows), field.q))
    if pair is None:
        return Separation()

    def orbit(i: int) -> MultiOrbit:
        return MultiOrbit(field, m, n, tuple((point_of(field, m, int(x)), 1) for x in rows[i]))

    i, j = pair
    return Separation(MultiWitness(orbit(j), orbit(i)))


@dataclass(frozen=True)
class MultiBoundsReport:
    q: int
    m: int
    n: int
    orbit_count: int
    klr_bound: int
    sizes: Mapping[str, int]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "m": self.m,
            "n": self.n,
            "orbitCount": str(self.orbit_count),
            "klrBound": self.klr_bound,
            "sizes": dict(self.sizes),
        }


def multi_bounds(field: GF, m: int, n: int) -> MultiBoundsReport:
    count = multi_orbit_count(field.q, m, n)
    sizes = {name: len(family(name, field, m, n)) for name in FAMILIES}
    return MultiBoundsReport(field.q, m, n, count, ceil_log(count, field.q), sizes)
