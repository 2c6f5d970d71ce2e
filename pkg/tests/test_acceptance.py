"""Acceptance criteria 1-8. Each test records one PASS/FAIL line in the terminal summary."""

import json
import random
import time

import pytest

from hermite5.cli import main
from hermite5.cubic import DESCENDED, CubicSurface, jacobian_singular_scan, rationality_test, secant_descent
from hermite5.ff import (UniPoly, char_poly_element, find_irreducible, iter_irreducible, make_extension,
                         make_prime_field)
from hermite5.forms import form_eval, form_partials, generic_char_coefficients
from hermite5.hermite import affine_zero_count, build_system, projective_zero_count, quintic_field

from corpus import FERMAT, all_quadratic_points, sampled_quadratic_points, surfaces
from oracles import classify_secant, conjugate_minpoly, parse_dense, projective_common_zeros

EXPECTED_MODULI = {2: 6, 3: 48, 5: 624, 7: 3360}
STATE = {}


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    return tmp_path_factory.mktemp("acceptance")


def verify_all_cli(p, path, jobs=1):
    code = main(["verify-all", "--p", str(p), "--jobs", str(jobs), "--out", str(path)])
    return code, path.read_bytes()


def check_report(r, p):
    """Recompute the minimal polynomial of the reported element from scratch."""
    f = parse_dense(r["modulus"], p)
    a = parse_dense(r["element"], p)
    mp = conjugate_minpoly(a, f, p)
    return (
        mp is not None and len(mp) == 6 and mp[5] == 1
        and mp[4] == 0 and mp[2] == 0
        and mp == parse_dense(r["minpoly"], p)
    )


def test_criterion_1_exhaustive_verification(acceptance, workdir, capsys):
    t0 = time.perf_counter()
    details, ok = [], True
    for p, n in EXPECTED_MODULI.items():
        code, raw = verify_all_cli(p, workdir / f"verify_{p}.json")
        capsys.readouterr()
        STATE[f"verify_{p}"] = raw
        result = json.loads(raw)
        good = sum(check_report(r, p) for r in result["reports"])
        this = code == 0 and result["tested"] == n and result["failed"] == [] and good == n
        ok &= this
        details.append(f"GF({p}) {good}/{n}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 300
    acceptance(1, ok, ", ".join(details) + f" recomputed; {elapsed:.1f}s (limit 300s)")
    assert ok


def test_criterion_2_trivial_point_dichotomy(acceptance):
    t0 = time.perf_counter()
    ok, seen = True, []
    for p in (2, 3, 5, 7, 11, 13):
        s = build_system(quintic_field(p, find_irreducible(p, 5)))
        c1 = form_eval(s.c1, (1, 0, 0, 0, 0))
        c3 = form_eval(s.c3, (1, 0, 0, 0, 0))
        ok &= (c1, c3) == (-5 % p, -10 % p)
        ok &= (c1 == 0 and c3 == 0) == (p == 5)
        seen.append(f"p={p}:({c1},{c3})")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1
    acceptance(2, ok, " ".join(seen) + f"; {elapsed:.2f}s (limit 1s)")
    assert ok


def _matches(cs, a):
    vals = [form_eval(c, a.coeffs) for c in cs]
    return list(char_poly_element(a).coeffs) == vals[::-1] + [1]


def test_criterion_3_char_poly_oracle(acceptance):
    t0 = time.perf_counter()
    gf32 = make_extension(make_prime_field(2), find_irreducible(2, 5))
    gf7_5 = make_extension(make_prime_field(7), find_irreducible(7, 5))
    cs32, cs7 = generic_char_coefficients(gf32), generic_char_coefficients(gf7_5)
    n32 = sum(_matches(cs32, a) for a in gf32.elements())
    rng = random.Random(2024)
    sample = [gf7_5.random(rng) for _ in range(500)]
    n7 = sum(_matches(cs7, a) for a in sample)
    elapsed = time.perf_counter() - t0
    ok = n32 == 32 and n7 == 500 and elapsed < 10
    acceptance(3, ok, f"GF(2^5) {n32}/32, GF(7^5) {n7}/500; {elapsed:.1f}s (limit 10s)")
    assert ok


def test_criterion_4_chevalley_warning(acceptance):
    t0 = time.perf_counter()
    ok, seen = True, []
    for p in (2, 3, 5, 7):
        for f in list(iter_irreducible(p, 5))[:3]:
            s = build_system(quintic_field(p, f))
            n_aff, n_proj = affine_zero_count(s), projective_zero_count(s)
            ok &= n_aff % p == 0 and n_aff == 1 + (p - 1) * n_proj
            if p < 7:
                ok &= n_proj == projective_common_zeros([s.c1.terms, s.c3.terms], p, 5)
            seen.append(n_aff)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 30
    acceptance(4, ok, f"12 systems, affine counts {seen}; {elapsed:.1f}s (limit 30s)")
    assert ok


def test_criterion_5_unit_anchor(acceptance):
    t0 = time.perf_counter()
    ok = True
    for p in (2, 3, 5, 7):
        ctx = make_extension(make_prime_field(p), find_irreducible(p, 5))
        ok &= char_poly_element(ctx.one) == UniPoly([-1, 5, -10, 10, -5, 1], p)
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1
    acceptance(5, ok, f"(t-1)^5 for p=2,3,5,7; {elapsed:.2f}s (limit 1s)")
    assert ok


def descent_corpus():
    """Descent outcomes over the corpus, plus counts of oracle checks."""
    records, checked, mismatches, bad = [], 0, 0, 0
    for p in (2, 3, 7):
        for name, X in surfaces(p):
            if p < 7:
                K, pts = all_quadratic_points(X)
            else:
                K, pts = sampled_quadratic_points(X, 40)
            for pt in pts:
                out = secant_descent(X, pt)
                if p < 7:
                    checked += 1
                    mismatches += (out.outcome, out.point) != classify_secant(X, pt, K)
                if out.outcome == DESCENDED:
                    bad += X(out.point) != 0 or rationality_test(out.point) != out.point
                records.append({"p": p, "surface": name, "input": [c.to_text("w") for c in pt],
                                "result": out.to_dict()})
    return records, checked, mismatches, bad


def test_criterion_6_secant_descent(acceptance):
    t0 = time.perf_counter()
    records, checked, mismatches, bad = descent_corpus()
    STATE["descent"] = json.dumps(records, sort_keys=True).encode()
    descended = sum(r["result"]["outcome"] == DESCENDED for r in records)
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and bad == 0 and descended > 0 and checked > 0 and elapsed < 60
    acceptance(6, ok, f"{len(records)} points, {descended} descended, {checked} oracle-checked, "
                      f"{mismatches} mismatches; {elapsed:.1f}s (limit 60s)")
    assert ok


def test_criterion_7_char3_degeneration(acceptance):
    t0 = time.perf_counter()
    X3 = CubicSurface.parse(FERMAT, 3)
    jacobian_zero = all(g.is_zero() for g in form_partials(X3.form))
    sing = jacobian_singular_scan(X3, maxdeg=1)
    all_singular = sorted(s.coords for s in sing) == sorted(X3.rational_points())
    smooth7 = jacobian_singular_scan(CubicSurface.parse(FERMAT, 7), maxdeg=1) == []
    elapsed = time.perf_counter() - t0
    ok = jacobian_zero and all_singular and len(sing) > 0 and smooth7 and elapsed < 10
    acceptance(7, ok, f"GF(3) {len(sing)} points all singular, GF(7) maxdeg 1 empty={smooth7}; "
                      f"{elapsed:.1f}s (limit 10s)")
    assert ok


def test_criterion_8_determinism(acceptance, workdir, capsys):
    if "descent" not in STATE or any(f"verify_{p}" not in STATE for p in EXPECTED_MODULI):
        pytest.skip("criteria 1 and 6 must run first")
    same = []
    for p in EXPECTED_MODULI:
        _, raw = verify_all_cli(p, workdir / f"verify_{p}_rerun.json", jobs=2)
        capsys.readouterr()
        same.append(raw == STATE[f"verify_{p}"])
    records = descent_corpus()[0]
    same_descent = json.dumps(records, sort_keys=True).encode() == STATE["descent"]
    ok = all(same) and same_descent
    acceptance(8, ok, f"verify-all reruns (2 workers) identical={all(same)}, descent rerun identical={same_descent}")
    assert ok
