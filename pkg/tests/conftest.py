from __future__ import annotations

import itertools
import sys

import pytest

from sepsym import field_of_order
from sepsym.orbits import canonical_vector


def poly_mul_mod(a, b, modulus, p):
    """Schoolbook product of digit vectors reduced by a monic modulus (test oracle)."""
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    e = len(modulus) - 1
    for i in range(len(prod) - 1, e - 1, -1):
        c = prod[i]
        if c:
            for j in range(e + 1):
                prod[i - e + j] = (prod[i - e + j] - c * modulus[j]) % p
    return (prod + [0] * e)[:e]


def esym_bruteforce(field, orbit, k):
    """s_k of the canonical vector, summing products over all k-subsets."""
    v = canonical_vector(orbit)
    total = 0
    for combo in itertools.combinations(v, k):
        term = 1
        for x in combo:
            term = field.mul(term, x)
        total = field.add(total, term)
    return total


@pytest.fixture(scope="session")
def F():
    return field_of_order


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in results.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
