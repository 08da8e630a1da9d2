"""S_n-orbits of GF(q)^n as multiplicity functions on the nonzero elements."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping, Sequence

from .errors import AmbientTooSmall, TooMany
from .gf import GF

DEFAULT_CAP = 10**8


@dataclass(frozen=True, repr=False)
class OrbitMultiplicity:
    """How many coordinates equal each nonzero element; the rest are zero.

    ``counts[a - 1]`` is the multiplicity of the element with index ``a``.
    """

    field: GF
    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.field.q - 1:
            raise ValueError(f"expected {self.field.q - 1} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if sum(counts) > self.n:
            raise ValueError(f"counts sum to {sum(counts)} > n={self.n}")

    @classmethod
    def from_map(cls, field: GF, n: int, mapping: Mapping[int, int]) -> OrbitMultiplicity:
        counts = [0] * (field.q - 1)
        for a, c in mapping.items():
            if not 0 < a < field.q:
                raise ValueError(f"key {a} is not a nonzero element of {field}")
            counts[a - 1] += c
        return cls(field, n, tuple(counts))

    @classmethod
    def empty(cls, field: GF, n: int) -> OrbitMultiplicity:
        return cls(field, n, (0,) * (field.q - 1))

    def __getitem__(self, a: int) -> int:
        if a == 0:
            return self.zeros
        return self.counts[a - 1]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def zeros(self) -> int:
        return self.n - self.total

    def items(self) -> list[tuple[int, int]]:
        """Nonzero ``(element, count)`` pairs in element order."""
        return [(a, c) for a, c in enumerate(self.counts, start=1) if c]

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def literal(self) -> str:
        body = ",".join(f"{a}:{c}" for a, c in self.items())
        return f"{body}/{self.n}"

    def with_n(self, n: int) -> OrbitMultiplicity:
        return OrbitMultiplicity(self.field, n, self.counts)

    def __repr__(self):
        return f"OrbitMultiplicity({self.field!r}, n={self.n}, {self.as_dict()})"


def parse_orbit(field: GF, text: str) -> OrbitMultiplicity:
    """Parse the literal ``a1:c1,a2:c2/n`` (``/n`` alone is the zero orbit)."""
    body, sep, n_text = text.strip().rpartition("/")
    if not sep:
        raise ValueError(f"orbit literal {text!r} lacks '/n'")
    n = int(n_text)
    mapping: dict[int, int] = {}
    for part in filter(None, (s.strip() for s in body.split(","))):
        a_text, colon, c_text = part.partition(":")
        if not colon:
            raise ValueError(f"bad orbit entry {part!r}")
        a = int(a_text)
        if a in mapping:
            raise ValueError(f"duplicate element {a} in {text!r}")
        mapping[a] = int(c_text)
    return OrbitMultiplicity.from_map(field, n, mapping)


def orbit_from_vector(field: GF, v: Sequence[int]) -> OrbitMultiplicity:
    counts = [0] * (field.q - 1)
    for x in v:
        if not 0 <= x < field.q:
            raise ValueError(f"{x} is not an element of {field}")
        if x:
            counts[x - 1] += 1
    return OrbitMultiplicity(field, len(v), tuple(counts))


def canonical_vector(orbit: OrbitMultiplicity) -> list[int]:
    """The weakly increasing representative of the orbit."""
    v = [0] * orbit.zeros
    for a, c in orbit.items():
        v.extend([a] * c)
    return v


def orbit_count(q: int, n: int) -> int:
    return comb(n + q - 1, q - 1)


def check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise TooMany(f"{count} orbits exceed the enumeration cap {cap}")


def _compositions(slots: int, budget: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        yield ()
        return
    for c in range(budget + 1):
        for rest in _compositions(slots - 1, budget - c):
            yield (c, *rest)


def enumerate_orbits(
    field: GF, n: int, *, cap: int = DEFAULT_CAP, first_count: int | None = None
) -> Iterator[OrbitMultiplicity]:
    """Every element of Pi_{q,n} once, lexicographic in the count vector.

    ``first_count`` restricts the stream to orbits whose count at element 1
    equals it, which partitions the stream into independent shards.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    check_cap(orbit_count(field.q, n), cap)
    slots = field.q - 1

    def gen():
        firsts = range(n + 1) if first_count is None else [first_count]
        for c1 in firsts:
            for rest in _compositions(slots - 1, n - c1):
                yield OrbitMultiplicity(field, n, (c1, *rest))

    return gen()


@dataclass(frozen=True)
class DigitSlice:
    low: OrbitMultiplicity
    high: OrbitMultiplicity
    shifted: OrbitMultiplicity


def digit_slice(orbit: OrbitMultiplicity, k: int) -> DigitSlice:
    """Split each count into its ``k+1`` lowest base-p digits and the rest."""
    if k < 0:
        raise ValueError("k must be non-negative")
    mod = orbit.field.p ** (k + 1)
    low = tuple(c % mod for c in orbit.counts)
    high = tuple(c - lo for c, lo in zip(orbit.counts, low))
    shifted = tuple(h // mod for h in high)
    f, n = orbit.field, orbit.n
    return DigitSlice(
        OrbitMultiplicity(f, n, low), OrbitMultiplicity(f, n, high), OrbitMultiplicity(f, n, shifted)
    )


def scale_by_p(orbit: OrbitMultiplicity, j: int, m: int) -> OrbitMultiplicity:
    """The orbit ``a -> p**j * O(a)`` inside the ambient dimension ``m``."""
    factor = orbit.field.p**j
    if factor * orbit.n > m:
        raise AmbientTooSmall(f"p^{j} * n = {factor * orbit.n} exceeds m={m}")
    return OrbitMultiplicity(orbit.field, m, tuple(factor * c for c in orbit.counts))
