"""Separating sets of elementary symmetric polynomials over GF(q).

Orbits are always handled as multiplicity functions.  The exhaustive checks
group the rows of an :class:`~sepsym.series.OrbitTable` by their values on a
degree set; a group with two members is a pair of orbits the set fails to
tell apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegreeMismatch,
    NoPreimage,
    NotDivisor,
    NotMonic,
    NotSeparating,
    TheoremViolation,
    TooMany,
    UnsupportedScale,
)
from .gf import GF, field_of_order, prime_power
from .orbits import DEFAULT_CAP, OrbitMultiplicity, orbit_count
from .series import _power_matrix, conv_rows, gen_poly, orbit_table

RECOVERY_LIMIT = 8
RECOVERY_LIMIT_EXTENDED = 9
ALL_MINIMAL_LIMIT = 20


def floor_log(n: int, p: int) -> int:
    """Largest ``k`` with ``p**k <= n`` (n >= 1)."""
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def ceil_log(x: int, base: int) -> int:
    """Smallest ``b >= 0`` with ``base**b >= x``, exact for big integers."""
    b, power = 0, 1
    while power < x:
        power *= base
        b += 1
    return b


def index_set(q: int, n: int) -> tuple[int, ...]:
    """The degrees ``j * p**k <= n`` with ``1 <= j <= q-1``."""
    p, _ = prime_power(q)
    out = set()
    step = 1
    while step <= n:
        out.update(j * step for j in range(1, q) if j * step <= n)
        step *= p
    return tuple(sorted(out))


@dataclass(frozen=True)
class WitnessPair:
    """Two orbits of Pi_{q,n}: a collision on some degree set, or a
    witness that ``s_k`` cannot be dropped (equal at every other degree)."""

    v: OrbitMultiplicity
    w: OrbitMultiplicity
    k: int | None
    kind: str

    def to_json(self) -> dict:
        return {
            "q": self.v.field.q,
            "n": self.v.n,
            "k": self.k,
            "kind": self.kind,
            "v": self.v.literal(),
            "w": self.w.literal(),
        }

    def satisfies_vw(self) -> bool:
        """Check equality at all degrees except ``k`` and inequality at ``k``."""
        gv, gw = gen_poly(self.v), gen_poly(self.w)
        n = self.v.n
        return gv[self.k] != gw[self.k] and all(
            gv[j] == gw[j] for j in range(1, n + 1) if j != self.k
        )


@dataclass(frozen=True)
class Separation:
    """Outcome of an exhaustive separating check; truthy when separating."""

    witness: WitnessPair | None = None

    def __bool__(self) -> bool:
        return self.witness is None


# --- grouping --------------------------------------------------------------

def group_ids(matrix: np.ndarray, base: int) -> np.ndarray:
    """Label each row so that equal rows share a label."""
    rows, cols = matrix.shape
    if cols == 0:
        return np.zeros(rows, dtype=np.int64)
    if base**cols < 2**62:
        keys = np.zeros(rows, dtype=np.int64)
        for c in range(cols):
            keys = keys * base + matrix[:, c]
        _, inv = np.unique(keys, return_inverse=True)
    else:
        _, inv = np.unique(matrix, axis=0, return_inverse=True)
    return inv.reshape(-1)


def first_collision(ids: np.ndarray) -> tuple[int, int] | None:
    """The lexicographically first pair ``i < j`` with equal labels."""
    sizes = np.bincount(ids)
    shared = sizes[ids] > 1
    if not shared.any():
        return None
    i = int(np.argmax(shared))
    j = int(np.flatnonzero(ids == ids[i])[1])
    return i, j


def _columns(table, degrees: Iterable[int]) -> np.ndarray:
    degs = [d for d in sorted(set(degrees)) if 1 <= d <= table.n]
    return table.coeffs[:, degs]


def is_separating(
    field: GF, n: int, degrees: Iterable[int], *, cap: int = DEFAULT_CAP, workers: int = 1
) -> Separation:
    table = orbit_table(field, n, cap=cap, workers=workers)
    pair = first_collision(group_ids(_columns(table, degrees), field.q))
    if pair is None:
        return Separation()
    i, j = pair
    return Separation(WitnessPair(table.orbit(j), table.orbit(i), None, "collision"))


def irreplaceable_witness(
    field: GF, n: int, k: int, *, cap: int = DEFAULT_CAP, workers: int = 1
) -> WitnessPair | None:
    """Orbits agreeing on every ``s_j`` (j != k) but not on ``s_k``, if any exist.

    ``None`` means ``s_k`` can be dropped from the full set ``{s_1..s_n}``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    table = orbit_table(field, n, cap=cap, workers=workers)
    ids = group_ids(_columns(table, (j for j in range(1, n + 1) if j != k)), field.q)
    _, first = np.unique(ids, return_index=True)
    leader = first[ids]
    sk = table.column(k)
    differs = np.flatnonzero(sk != sk[leader])
    if len(differs) == 0:
        return None
    order = leader[differs].astype(np.int64) * len(table) + differs
    r = int(differs[np.argmin(order)])
    return WitnessPair(table.orbit(r), table.orbit(int(leader[r])), k, "irreplaceable")


# --- digit recovery and reconstruction ------------------------------------

def _grid(field: GF, elements: Sequence[int], width: int):
    """Coefficients up to degree ``width-1`` of every map ``elements -> {0..q-1}``."""
    q = field.q
    counts = np.zeros((1, 0), dtype=np.int64)
    coeffs = np.zeros((1, width), dtype=np.int64)
    coeffs[0, 0] = 1
    for a in elements:
        table = _power_matrix(field, a, q - 1, width - 1)
        rows = len(counts)
        parent = np.repeat(np.arange(rows), q)
        c = np.tile(np.arange(q), rows)
        coeffs = conv_rows(field, coeffs[parent], table[c])
        counts = np.column_stack([counts[parent], c])
    return counts, coeffs


def digit_recovery_rows(field: GF, first: int):
    """Keys (coefficients 1..q-1) and residue codes of all maps with ``D(1) == first``."""
    q, p = field.q, field.p
    counts, coeffs = _grid(field, range(2, q), q)
    head = _power_matrix(field, 1, first, q - 1)[first]
    coeffs = conv_rows(field, coeffs, np.broadcast_to(head, coeffs.shape))
    keys = np.zeros(len(coeffs), dtype=np.int64)
    for j in range(q - 1, 0, -1):
        keys = keys * q + coeffs[:, j]
    codes = np.full(len(coeffs), first % p, dtype=np.int64)
    for i in range(counts.shape[1]):
        codes += (counts[:, i] % p) * p ** (i + 1)
    return keys, codes


@lru_cache(maxsize=4)
def _recovery_lookup(field: GF):
    keys, codes = [], []
    for first in range(field.q):
        k, c = digit_recovery_rows(field, first)
        uk, idx = np.unique(k, return_index=True)
        keys.append(uk)
        codes.append(c[idx])
    all_keys = np.concatenate(keys)
    all_codes = np.concatenate(codes)
    uk, idx = np.unique(all_keys, return_index=True)
    return uk, all_codes[idx]


def _check_recovery_scale(field: GF, allow_extended: bool) -> None:
    limit = RECOVERY_LIMIT_EXTENDED if allow_extended else RECOVERY_LIMIT
    if field.q > limit:
        raise UnsupportedScale(f"exhaustive digit recovery limited to q <= {limit}")


def base_digit_recover(
    field: GF, coeffs: Sequence[int], *, allow_extended: bool = False
) -> dict[int, int]:
    """Residues mod p of any ``D: GF(q)^x -> {0..q-1}`` whose generating
    polynomial has coefficients ``coeffs`` in degrees 1..q-1.

    The residues do not depend on which matching ``D`` is found.
    """
    _check_recovery_scale(field, allow_extended)
    q, p = field.q, field.p
    if len(coeffs) != q - 1:
        raise ValueError(f"need {q - 1} coefficients")
    key = 0
    for c in reversed(coeffs):
        key = key * q + int(c)
    keys, codes = _recovery_lookup(field)
    pos = int(np.searchsorted(keys, key))
    if pos == len(keys) or keys[pos] != key:
        raise NoPreimage(f"no map matches coefficients {tuple(coeffs)}")
    code = int(codes[pos])
    return {a: (code // p ** (a - 1)) % p for a in range(1, q)}


def reconstruct(
    field: GF, n: int, values: Mapping[int, int], *, allow_extended: bool = False
) -> OrbitMultiplicity:
    """Recover the orbit whose values on ``[n]_q`` are ``values``, digit by digit.

    Raises NoPreimage if no orbit of Pi_{q,n} has these values.
    """
    _check_recovery_scale(field, allow_extended)
    q, p = field.q, field.p
    degrees = index_set(q, n)
    if set(values) != set(degrees):
        raise ValueError(f"values must be keyed exactly by {list(degrees)}")
    for t, x in values.items():
        if not 0 <= x < q:
            raise ValueError(f"value {x} at degree {t} is not an element of {field}")
    if n == 0:
        return OrbitMultiplicity.empty(field, 0)

    def val(t: int) -> int:
        return values[t] if t <= n else 0

    def absorb(counts: list[int], digits: dict[int, int], step: int) -> OrbitMultiplicity:
        for a, d in digits.items():
            counts[a - 1] += d * step
        if sum(counts) > n:
            raise NoPreimage("recovered multiplicities exceed n")
        return OrbitMultiplicity(field, n, tuple(counts))

    counts = [0] * (q - 1)
    digits = base_digit_recover(field, [val(j) for j in range(1, q)], allow_extended=allow_extended)
    known = absorb(counts, digits, 1)
    for k in range(floor_log(n, p)):
        step = p ** (k + 1)
        g = gen_poly(known)
        y: list[int] = []
        for j in range(1, q):
            rhs = field.sub(val(j * step), g[j * step])
            for i in range(1, j):
                rhs = field.sub(rhs, field.mul(g[(j - i) * step], y[i - 1]))
            y.append(rhs)
        shifted = [field.pth_root(yj, k + 1) for yj in y]
        digits = base_digit_recover(field, shifted, allow_extended=allow_extended)
        known = absorb(counts, digits, step)
    g = gen_poly(known)
    if any(g[t] != values[t] for t in degrees):
        raise NoPreimage("no orbit takes these values")
    return known


# --- minimality --------------------------------------------------------------

class _SeparatingOracle:
    """Memoized separating test for subsets of a fixed degree pool."""

    def __init__(self, field: GF, n: int, cap: int, workers: int):
        self.table = orbit_table(field, n, cap=cap, workers=workers)
        self.q = field.q
        self.memo: dict[frozenset, bool] = {}

    def __call__(self, degrees: frozenset) -> bool:
        hit = self.memo.get(degrees)
        if hit is None:
            ids = group_ids(_columns(self.table, degrees), self.q)
            hit = first_collision(ids) is None
            self.memo[degrees] = hit
        return hit


def minimal_subsets(
    field: GF,
    n: int,
    degrees: Iterable[int],
    mode: str = "all",
    *,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> list[tuple[int, ...]]:
    """Inclusion-minimal separating subsets of ``degrees``.

    ``one_greedy`` drops the largest removable degree until none can go;
    ``all`` lists every minimal subset, sorted by size then lexicographically.
    """
    pool = tuple(sorted(set(degrees)))
    if mode not in ("all", "one_greedy"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "all" and len(pool) > ALL_MINIMAL_LIMIT:
        raise TooMany(f"'all' mode limited to {ALL_MINIMAL_LIMIT} degrees")
    sep = _SeparatingOracle(field, n, cap, workers)
    full = frozenset(pool)
    if not sep(full):
        raise NotSeparating(f"{list(pool)} does not separate Pi_{{{field.q},{n}}}")

    if mode == "one_greedy":
        current = full
        while True:
            for d in sorted(current, reverse=True):
                if sep(current - {d}):
                    current = current - {d}
                    break
            else:
                return [tuple(sorted(current))]

    found = []

    def visit(current: frozenset, start: int) -> None:
        if not any(sep(current - {d}) for d in current):
            found.append(tuple(sorted(current)))
        for i in range(start, len(pool)):
            d = pool[i]
            if d in current and sep(current - {d}):
                visit(current - {d}, i + 1)

    visit(full, 0)
    return sorted(found, key=lambda s: (len(s), s))


def monotonicity_check(
    field: GF, n: int, m: int, degrees: Iterable[int], *, cap: int = DEFAULT_CAP
) -> bool:
    """Whether separation at ``n`` carries over to ``m <= n`` for ``degrees``."""
    if m > n:
        raise ValueError("need m <= n")
    degrees = set(degrees)
    if not is_separating(field, n, degrees, cap=cap):
        return True
    return bool(is_separating(field, m, {d for d in degrees if d <= m}, cap=cap))


# --- bounds ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    q: int
    n: int
    set_size: int
    orbit_count: int
    klr_bound: int
    defect: int | None

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "setSize": self.set_size,
            "orbitCount": str(self.orbit_count),
            "klrBound": self.klr_bound,
            "defect": self.defect,
        }


def bounds_report(q: int, n: int) -> BoundsReport:
    """Size of ``[n]_q`` against the least possible size of a separating set."""
    field = field_of_order(q)
    size = len(index_set(q, n))
    count = orbit_count(q, n)
    bound = ceil_log(count, q)
    defect = size - bound if field.is_prime_field else None
    return BoundsReport(q, n, size, count, bound, defect)


# --- explicit witnesses --------------------------------------------------------

def roots_of_unity_witness(field: GF, k: int) -> WitnessPair:
    """The k-th roots of unity against the zero vector, for ``k | q-1``."""
    if k < 1 or (field.q - 1) % k:
        raise NotDivisor(f"{k} does not divide q-1 = {field.q - 1}")
    roots = [a for a in field.nonzero() if field.pow(a, k) == 1]
    v = OrbitMultiplicity.from_map(field, k, {a: 1 for a in roots})
    w = OrbitMultiplicity.empty(field, k)
    expected = 1 if k % 2 else field.neg(1)
    g = gen_poly(v)
    if len(roots) != k or any(g[j] for j in range(1, k)) or g[k] != expected:
        raise TheoremViolation(f"roots of x^{k}-1 in {field} do not give a witness")
    return WitnessPair(v, w, k, "irreplaceable")


# --- univariate reformulation ---------------------------------------------------

@dataclass(frozen=True)
class LacunaryResult:
    status: str  # "equal", "differ" or "not_split"
    degree: int | None = None
    which: str | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "degree": self.degree, "which": self.which}


def _eval(field: GF, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _deflate(field: GF, coeffs: list[int], root: int) -> list[int]:
    """Quotient of the polynomial by ``x - root`` (synthetic division)."""
    out = [0] * (len(coeffs) - 1)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry = field.add(field.mul(carry, root), coeffs[i])
        out[i - 1] = carry
    return out


def splits(field: GF, coeffs: Sequence[int]) -> bool:
    """Whether a monic polynomial is a product of linear factors over the field."""
    poly = list(coeffs)
    for a in field.elements():
        while len(poly) > 1 and _eval(field, poly, a) == 0:
            poly = _deflate(field, poly, a)
    return len(poly) == 1


def lacunary_check(field: GF, f: Sequence[int], g: Sequence[int]) -> LacunaryResult:
    """Compare two split monic polynomials (coefficients low to high) at the
    degrees ``n - j``, ``j`` in ``[n]_q``; agreement there forces ``f == g``."""
    if len(f) != len(g):
        raise DegreeMismatch(f"degrees {len(f) - 1} and {len(g) - 1}")
    if f[-1] != 1 or g[-1] != 1:
        raise NotMonic("both polynomials must be monic")
    bad = [name for name, h in (("f", f), ("g", g)) if not splits(field, h)]
    if bad:
        return LacunaryResult("not_split", which="both" if len(bad) == 2 else bad[0])
    n = len(f) - 1
    for j in index_set(field.q, n):
        if f[n - j] != g[n - j]:
            return LacunaryResult("differ", degree=n - j)
    if list(f) != list(g):
        raise TheoremViolation(f"split polynomials {f} and {g} agree on [n]_q but differ")
    return LacunaryResult("equal")
