"""Acceptance criteria, one function each.

Run with pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import time
from importlib import resources
from math import comb

import pytest

from sepsym import field_of_order
from sepsym.cli import main as cli_main
from sepsym.multisym import family, is_separating_multi, multi_bounds
from sepsym.orbits import digit_slice, enumerate_orbits, orbit_from_vector, scale_by_p
from sepsym.separating import (
    WitnessPair,
    bounds_report,
    index_set,
    irreplaceable_witness,
    is_separating,
    minimal_subsets,
    monotonicity_check,
    reconstruct,
    roots_of_unity_witness,
)
from sepsym.series import gen_poly, series_mul, series_pow_ppow, signature

RESULTS: dict[str, tuple[bool, str]] = {}


def _fixtures():
    return json.loads(resources.files("sepsym").joinpath("data/witness_table.json").read_text())


def criterion_1():
    cases = [(2, 16), (3, 12), (4, 10), (5, 10), (7, 8), (8, 6), (9, 6)]
    slowest = 0.0
    for q, n in cases:
        start = time.perf_counter()
        code = cli_main(["verify-main", "--q", str(q), "--n", str(n), "--out", "/dev/null"])
        slowest = max(slowest, time.perf_counter() - start)
        if code != 0:
            return False, f"verify-main q={q} n={n} exited {code}"
    return slowest < 60, f"{len(cases)} cases exit 0, slowest {slowest:.2f}s (< 60s)"


def criterion_2():
    start = time.perf_counter()
    total = 0
    for q, n in [(3, 12), (4, 8), (5, 8), (7, 6), (8, 5)]:
        f = field_of_order(q)
        degrees = index_set(q, n)
        for o in enumerate_orbits(f, n):
            total += 1
            if reconstruct(f, n, dict(zip(degrees, signature(o, degrees)))) != o:
                return False, f"round trip failed for {o!r}"
    elapsed = time.perf_counter() - start
    return elapsed < 120, f"{total} orbits, zero failures, {elapsed:.1f}s (< 120s)"


def criterion_3():
    rows = _fixtures()
    per_q = {}
    for row in rows:
        per_q[row["q"]] = per_q.get(row["q"], 0) + 1
        f = field_of_order(row["q"])
        v, w = orbit_from_vector(f, row["v"]), orbit_from_vector(f, row["w"])
        if len(row["v"]) != row["n"] or not WitnessPair(v, w, row["k"], "irreplaceable").satisfies_vw():
            return False, f"row {row} fails"
    expected = {3: 2, 5: 4, 7: 6, 11: 7}
    has_s78 = any(r["q"] == 11 and r["n"] == 8 and r["k"] == 7 for r in rows)
    ok = per_q == expected and has_s78
    return ok, f"{len(rows)} rows {per_q} all satisfy the characterization"


def criterion_4():
    f = field_of_order(7)
    sep = bool(is_separating(f, 5, {1, 2, 3, 4}))
    none = irreplaceable_witness(f, 5, 5) is None
    code = cli_main(["search", "--q", "7", "--n", "5", "--k", "5", "--out", "/dev/null"])
    return sep and none and code == 3, f"separating={sep}, witness None={none}, search exit {code}"


def criterion_5():
    start = time.perf_counter()
    f = field_of_order(11)
    base = (1, 2, 3, 4, 5, 6, 7, 10)
    if not is_separating(f, 10, base):
        return False, "{1..7,10} not separating at n=10"
    for d in base:
        if is_separating(f, 10, set(base) - {d}):
            return False, f"{set(base) - {d}} still separating"
    found = [(n, k) for n, k in [(7, 7), (8, 8), (10, 8), (9, 9), (10, 9)] if irreplaceable_witness(f, n, k)]
    elapsed = time.perf_counter() - start
    ok = not found and elapsed < 600
    return ok, f"minimal with 9 checks; no witness for 5 (n,k) pairs; {elapsed:.1f}s (< 600s)"


def criterion_6():
    start = time.perf_counter()
    r = bounds_report(3, 9)
    if (r.set_size, r.orbit_count, r.klr_bound, r.defect) != (5, 55, 4, 1):
        return False, f"bounds_report(3,9) = {r}"
    worst = {}
    for p in (2, 3, 5, 7, 11, 13):
        worst[p] = max(bounds_report(p, n).defect for n in range(1, 201))
        if worst[p] > p - 2:
            return False, f"defect {worst[p]} > {p - 2} at p={p}"
    elapsed = time.perf_counter() - start
    return elapsed < 5, f"(5,55,4,1) at (3,9); max defects {worst}; {elapsed:.2f}s (< 5s)"


def criterion_7():
    f3, f2 = field_of_order(3), field_of_order(2)
    big = multi_bounds(f3, 2, 26)
    if (big.orbit_count, big.klr_bound, big.sizes["main"], big.sizes["cheap"]) != (18156204, 16, 26, 702):
        return False, f"multi_bounds(3,2,26) = {big}"
    small = multi_bounds(f3, 2, 8)
    if (small.klr_bound, tuple(small.sizes.values())) != (9, (16, 44, 72)):
        return False, f"multi_bounds(3,2,8) = {small}"
    start = time.perf_counter()
    for field, m, n in [(f3, 2, 8), (f2, 2, 4), (f3, 2, 5)]:
        for name in ("main", "amitsur", "cheap"):
            if not is_separating_multi(field, m, n, family(name, field, m, n)):
                return False, f"{name} not separating at ({field.q},{m},{n})"
    elapsed = time.perf_counter() - start
    return elapsed < 300, f"counts match; 3 families separate at 3 triples in {elapsed:.2f}s (< 300s)"


def criterion_8():
    checks = []
    # field axioms, exhaustive for q <= 64
    for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64):
        f = field_of_order(q)
        els = range(q)
        ok = all(
            f.add(a, f.neg(a)) == 0 and (a == 0 or f.mul(a, f.inv(a)) == 1) and f.pow(a, q) == a
            for a in els
        ) and all(
            f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            and f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            and f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            for a in els for b in els for c in (els if q <= 16 else (1, q - 1, q // 2))
        )
        if not ok:
            return False, f"field axioms fail for q={q}"
    checks.append("axioms")
    # factorization / Frobenius identities, q <= 5, n <= 10
    for q in (2, 3, 4, 5):
        f = field_of_order(q)
        for n in range(11):
            for o in enumerate_orbits(f, n):
                g = gen_poly(o)
                k = 0
                while f.p**k <= max(n, 1):
                    s = digit_slice(o, k)
                    if series_mul(gen_poly(s.low), gen_poly(s.high)) != g:
                        return False, f"factorization fails at {o!r}, k={k}"
                    if series_pow_ppow(gen_poly(s.shifted), k + 1) != gen_poly(s.high):
                        return False, f"Frobenius identity fails at {o!r}, k={k}"
                    k += 1
    checks.append("series identities")
    # vanishing low coefficients force multiplicities divisible by p, q <= 5, n <= 9
    for q in (2, 3, 4, 5):
        f = field_of_order(q)
        for n in range(10):
            for o in enumerate_orbits(f, n):
                g = gen_poly(o)
                if n >= q - 1 and not any(g[j] for j in range(1, q)) and any(c % f.p for c in o.counts):
                    return False, f"low-coefficient corollary fails at {o!r}"
    checks.append("low coefficients")
    # witness lifting with j = 1
    for row in _fixtures():
        f = field_of_order(row["q"])
        m = f.p * row["n"]
        v = scale_by_p(orbit_from_vector(f, row["v"]), 1, m)
        w = scale_by_p(orbit_from_vector(f, row["w"]), 1, m)
        if not WitnessPair(v, w, f.p * row["k"], "irreplaceable").satisfies_vw():
            return False, f"lifting fails for {row}"
    checks.append("lifting")
    # monotonicity spot checks
    for q, n, m in [(3, 6, 4), (2, 8, 3), (5, 6, 3), (7, 5, 4), (4, 6, 5)]:
        if not monotonicity_check(field_of_order(q), n, m, index_set(q, n)):
            return False, f"monotonicity fails at q={q}, n={n}, m={m}"
    checks.append("monotonicity")
    # roots of unity
    count = 0
    for q in (3, 4, 5, 7, 8, 9, 11):
        f = field_of_order(q)
        for k in range(1, q):
            if (q - 1) % k == 0:
                pair = roots_of_unity_witness(f, k)
                expected = 1 if k % 2 else f.neg(1)
                if not pair.satisfies_vw() or gen_poly(pair.v)[k] != expected:
                    return False, f"roots of unity fail at q={q}, k={k}"
                count += 1
    checks.append(f"roots of unity ({count})")
    return True, ", ".join(checks)


CRITERIA = {
    "1 main theorem, exhaustive": criterion_1,
    "2 reconstruction round trip": criterion_2,
    "3 witness table replay": criterion_3,
    "4 q=7, s_5 at n=5 replaceable": criterion_4,
    "5 q=11 minimality and searches": criterion_5,
    "6 bounds and defects": criterion_6,
    "7 multisymmetric families": criterion_7,
    "8 property suites": criterion_8,
}


def _line(name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}"


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    try:
        ok, detail = CRITERIA[name]()
    except Exception as exc:  # report, then fail
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    RESULTS[name] = (ok, detail)
    print(_line(name, ok, detail))
    assert ok, detail


@pytest.mark.slow
@pytest.mark.parametrize("n", [11, 12, 13])
def test_optional_q11_s8_not_irreplaceable(n):
    f = field_of_order(11)
    assert irreplaceable_witness(f, n, 8, cap=comb(n + 10, 10)) is None


if __name__ == "__main__":
    failed = 0
    for name, fn in CRITERIA.items():
        ok, detail = fn()
        failed += not ok
        print(_line(name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
