"""Arithmetic in GF(p^e) on integer element indices.

An element is the integer ``sum(c_i * p**i)`` standing for the residue
``sum(c_i * t**i)`` modulo the field's modulus (for prime fields, the residue
itself).  Index 0 is zero and index 1 is one, and enumeration order is index
order.  Scalar methods work on Python ints; the ``v*`` methods are their
numpy counterparts used by the exhaustive searches.
"""

from __future__ import annotations

import os
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DivisionByZero, NoModulusAvailable, NotPrime, TooLarge

DEFAULT_MAX_ORDER = 2**16
LOG_TABLE_LIMIT = 2**12
ADD_TABLE_LIMIT = 2**10
MODULUS_TABLE_ENV = "SEPSYM_MODULUS_TABLE"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` as ``(p, e)`` with ``q == p**e``; raise NotPrime otherwise."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, e


# --- polynomials over Z_p as coefficient lists, low degree first -----------

def _poly_rem(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] if dm else []


def _poly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_rem(prod, m, p)


def is_irreducible(modulus: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree at most deg/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p == 0:
        return False
    if e == 1:
        return True
    for d in range(1, e // 2 + 1):
        for code in range(p**d):
            cand = [(code // p**i) % p for i in range(d)] + [1]
            if not any(_poly_rem(modulus, cand, p)):
                return False
    return True


def _table_path() -> Path | None:
    env = os.environ.get(MODULUS_TABLE_ENV)
    return Path(env) if env else None


@lru_cache(maxsize=None)
def _read_table(path: str | None) -> dict[int, tuple[int, ...]]:
    if path is None:
        text = resources.files("sepsym").joinpath("data/moduli.txt").read_text()
    else:
        text = Path(path).read_text()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        q, *coeffs = (int(tok) for tok in line.split())
        table[q] = tuple(coeffs)
    return table


def modulus_table() -> dict[int, tuple[int, ...]]:
    path = _table_path()
    return _read_table(str(path) if path else None)


class GF:
    """The finite field with ``q = p**e`` elements."""

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus = None
        else:
            if modulus is None or len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus for GF({self.q}) must be monic of degree {e}")
            if any(not 0 <= c < p for c in modulus):
                raise ValueError("modulus coefficients must lie in [0, p)")
            if not is_irreducible(list(modulus), p):
                raise ValueError(f"modulus {modulus} is reducible over Z_{p}")
            self.modulus = tuple(modulus)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._add_np = None
        if e > 1 and self.q <= LOG_TABLE_LIMIT:
            self._build_log_tables()
        if e > 1 and p != 2 and self.q <= ADD_TABLE_LIMIT:
            idx = np.arange(self.q)
            self._add_np = np.array(
                [[self._add_digits(int(a), int(b)) for b in idx] for a in idx], dtype=np.int64
            )

    # -- identity -----------------------------------------------------------
    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, GF) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GF({self.q})"

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    # -- digit representation -----------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        return [(a // p**i) % p for i in range(self.e)]

    def from_digits(self, ds) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(ds))

    def embed_int(self, k: int) -> int:
        """Image of the integer ``k`` under Z -> GF(q)."""
        return k % self.p

    def _add_digits(self, a: int, b: int) -> int:
        p, out, w = self.p, 0, 1
        for _ in range(self.e):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def _mul_poly(self, a: int, b: int) -> int:
        r = _poly_mulmod(self.digits(a), self.digits(b), list(self.modulus), self.p)
        return self.from_digits(r)

    def _build_log_tables(self) -> None:
        q = self.q
        order = q - 1
        factors = prime_factors(order)
        for g in range(2, q):
            if all(self._pow_slow(g, order // f) != 1 for f in factors):
                break
        else:  # pragma: no cover - every finite field has a generator
            raise RuntimeError("no generator found")
        exp = [1] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_poly(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self.generator = g
        self._exp = exp
        self._log = log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

    def _pow_slow(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            n >>= 1
        return result

    # -- scalar arithmetic --------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_np is not None:
            return int(self._add_np[a, b])
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self.from_digits(-c % self.p for c in self.digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_poly(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """``a**n`` with the convention ``0**0 == 1``."""
        if n < 0:
            return self.pow(self.inv(a), -n)
        if n == 0:
            return 1
        if a == 0:
            return 0
        n %= self.q - 1
        if self.e == 1:
            return pow(a, n, self.p)
        if self._log is not None:
            return self._exp[self._log[a] * n % (self.q - 1)]
        return self._pow_slow(a, n)

    def frobenius(self, a: int, k: int = 1) -> int:
        return self.pow(a, self.p ** (k % self.e))

    def pth_root(self, a: int, k: int = 1) -> int:
        """The unique ``b`` with ``b**(p**k) == a``: inverse Frobenius ``k`` times."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return self.pow(a, self.p ** ((-k) % self.e))

    # -- vectorized arithmetic ----------------------------------------------
    def vadd(self, x, y):
        if self.e == 1:
            return (x + y) % self.p
        if self.p == 2:
            return np.bitwise_xor(x, y)
        if self._add_np is not None:
            return self._add_np[x, y]
        return np.frompyfunc(self._add_digits, 2, 1)(x, y).astype(np.int64)

    def vneg(self, x):
        if self.e == 1:
            return -x % self.p
        if self.p == 2:
            return x
        return np.frompyfunc(self.neg, 1, 1)(x).astype(np.int64)

    def vsub(self, x, y):
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y):
        if self.e == 1:
            return x * y % self.p
        if self._log is not None:
            x = np.asarray(x)
            y = np.asarray(y)
            prod = self._exp_np[self._log_np[x] + self._log_np[y]]
            return np.where((x == 0) | (y == 0), 0, prod)
        return np.frompyfunc(self.mul, 2, 1)(x, y).astype(np.int64)

    def vpow(self, x, n: int):
        """Elementwise ``x**n`` (``0**0 == 1``)."""
        x = np.asarray(x, dtype=np.int64)
        if n == 0:
            return np.ones_like(x)
        if self.e == 1:
            r = n % (self.p - 1) or (self.p - 1)
            out = np.ones_like(x)
            base = x.copy()
            while r:
                if r & 1:
                    out = out * base % self.p
                base = base * base % self.p
                r >>= 1
            return out
        table = np.array([self.pow(a, n) for a in range(self.q)], dtype=np.int64)
        return table[x]


@lru_cache(maxsize=None)
def _cached_field(p: int, e: int, modulus: tuple[int, ...] | None) -> GF:
    return GF(p, e, modulus)


def field_new(p: int, e: int = 1, *, max_order: int = DEFAULT_MAX_ORDER) -> GF:
    """Build (or fetch from cache) GF(p^e) using the shipped modulus table."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**e
    if q > max_order:
        raise TooLarge(f"GF({q}) exceeds the configured maximum {max_order}")
    modulus = None
    if e > 1:
        modulus = modulus_table().get(q)
        if modulus is None:
            raise NoModulusAvailable(f"no irreducible polynomial tabulated for q={q}")
    return _cached_field(p, e, modulus)


def field_of_order(q: int, *, max_order: int = DEFAULT_MAX_ORDER) -> GF:
    p, e = prime_power(q)
    return field_new(p, e, max_order=max_order)
