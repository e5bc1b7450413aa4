"""Acceptance criteria, one test per criterion.

Each test prints a PASS/FAIL line (visible with ``pytest -s`` or in the
summary of ``pytest -v``) and then asserts.  Run alone with::

    pytest tests/test_acceptance.py -v -s
"""

import io
import itertools
import json
import time
from fractions import Fraction as F

import numpy as np
import pytest

from quasimetric import dyadic
from quasimetric.cli import run_cli
from quasimetric.dyadic import ONE, ZERO, DyadicParams, DyadicPoint, path, points, rho, tau, truncate
from quasimetric.harness import (
    GeneratorSpec,
    collapse_experiment,
    generate_space,
    random_chain,
    random_rational_space,
    superadditivity_violations,
)
from quasimetric.metrize import chain_metrize, chain_oracle, frink_check, sigma_bound
from quasimetric.qcore import classify, mult_triangle_constant, quasi_constant, snowflake

TOL = 1e-9


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail, elapsed=None, limit=None):
        timing = "" if elapsed is None else f" ({elapsed:.2f}s" + ("" if limit is None else f" / limit {limit}s") + ")"
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}{timing}")
        assert ok, detail
        if limit is not None:
            assert elapsed < limit, f"{label} took {elapsed:.2f}s, limit {limit}s"

    return emit


def _k_le_2_spaces(count, seed0=0):
    """Deterministic stream of generated spaces with quasi_constant <= 2."""
    kinds = ["euclidean-metric", "ultrametric", "snowflaked-metric", "perturbed"]
    rng = np.random.Generator(np.random.PCG64(seed0))
    out = []
    seed = seed0
    while len(out) < count:
        kind = kinds[seed % 4]
        n = int(rng.integers(3, 13))
        p = float(rng.uniform(0.2, 1.0)) if kind == "snowflaked-metric" else None
        Q = generate_space(GeneratorSpec(kind, n, seed, p=p, delta=0.6))
        seed += 1
        K, _ = quasi_constant(Q)
        if K <= 2:
            out.append(Q)
    return out


def test_ac01_frink_theorem_suite(report):
    t = time.perf_counter()
    spaces = _k_le_2_spaces(200)
    failures = 0
    for Q in spaces:
        rep = frink_check(Q)
        failures += not (rep.applicable and rep.lower_ok and rep.upper_ok)
    elapsed = time.perf_counter() - t
    modes = sum(Q.exact for Q in spaces)
    report(
        "AC1 Frink theorem suite",
        failures == 0 and len(spaces) == 200,
        f"{len(spaces)} spaces with K<=2 ({modes} exact, {200 - modes} float, tol {TOL}), {failures} bound failures",
        elapsed,
        10,
    )


def test_ac02_oracle_equivalence(report):
    t = time.perf_counter()
    mismatches = 0
    for seed in range(50):
        n = 2 + seed % 6
        Q = random_rational_space(n, seed)
        mismatches += chain_oracle(Q, n - 2) != chain_metrize(Q).d.matrix()
    elapsed = time.perf_counter() - t
    report("AC2 oracle equivalence", mismatches == 0, f"50 exact spaces n<=7, {mismatches} mismatches", elapsed, 10)


def test_ac03_sigma_bound(report):
    spaces = _k_le_2_spaces(50, seed0=1000)
    rng = np.random.Generator(np.random.PCG64(3))
    Ks = [quasi_constant(Q)[0] for Q in spaces]
    violations = 0
    for c in range(1000):
        idx = c % len(spaces)
        Q = spaces[idx]
        chain = random_chain(rng, Q.n, int(rng.integers(3, 9)))
        violations += not sigma_bound(Q, chain, Ks[idx])[1]
    report("AC3 weighted chain bound", violations == 0, f"1000 chains of length 3-8, {violations} violations")


def test_ac04_snowflake_bound(report):
    worst = 0.0
    ok = True
    for seed in range(50):
        M = generate_space(GeneratorSpec("euclidean-metric", 3 + seed % 10, seed))
        for p in (1, 2, 3):
            K = quasi_constant(snowflake(M, p))[0]
            ok &= K <= 2**p + TOL
            worst = max(worst, K / 2**p)
    report("AC4 snowflake K <= 2^p", ok, f"50 euclidean metrics x p in {{1,2,3}}, max K/2^p = {worst:.6f}")


def test_ac05_fact4(report):
    A = DyadicParams(F(2, 5))
    t = time.perf_counter()
    pts = [z for z in points(8) if z.level >= 1]
    bad = [z for z in pts if rho(z, ZERO, A) + rho(z, ONE, A) != tau(z.level, A)]
    elapsed = time.perf_counter() - t
    report("AC5 endpoint-sum identity exact", len(pts) == 255 and not bad, f"{len(pts)} points, {len(bad)} failures", elapsed, 5)


def _ordered_triple_bound_violations(Q, a):
    """Ordered triples with p * rho(x,z) > (q - p) * (rho(x,y) + rho(y,z)); integer check."""
    p, q = a.numerator, a.denominator
    V = Q.values.astype(object) if Q.values.dtype == object else Q.values
    n = Q.n
    count = 0
    for y in range(n):
        lhs = p * V
        rhs = (q - p) * (V[:, y][:, None] + V[y, :][None, :])
        mask = ~np.eye(n, dtype=bool)
        mask[y, :] = mask[:, y] = False
        count += int(np.sum(np.asarray(lhs > rhs, dtype=bool) & mask))
    return count


def test_ac06_triangle_bound(report):
    t = time.perf_counter()
    lines, ok = [], True
    for a in (F(1, 4), F(2, 5), F(1, 2)):
        params = DyadicParams(a)
        Q = truncate(6, params)
        C, _ = mult_triangle_constant(Q)
        bad = _ordered_triple_bound_violations(Q, a)
        good = C <= params.bound_constant and bad == 0 and Q.n == 65
        if a == F(1, 2):
            good &= C <= 1 and classify(Q).is_metric
        ok &= good
        lines.append(f"a={a}: C={float(C):.6f} <= {params.bound_constant}, {bad} violations")
    elapsed = time.perf_counter() - t
    report("AC6 triangle bound exact", ok, "; ".join(lines), elapsed, 30)


def test_ac07_betweenness(report):
    t = time.perf_counter()
    total = 0
    for a in (F(1, 4), F(2, 5), F(1, 2)):
        total += len(superadditivity_violations(truncate(6, DyadicParams(a))))
    elapsed = time.perf_counter() - t
    report("AC7 betweenness superadditivity", total == 0, f"depth 6, 3 values of a, {total} violations", elapsed, 30)


def test_ac08_collapse(report):
    A = DyadicParams(F(2, 5))
    t = time.perf_counter()
    rows = collapse_experiment(A, 10)
    elapsed = time.perf_counter() - t
    d = [r.d01 for r in rows]
    ok = (
        all(r.d01 <= F(4, 5) ** r.depth for r in rows)
        and all(x >= y for x, y in zip(d, d[1:]))
        and float(d[-1]) <= 0.1074
        and [r.depth for r in rows] == list(range(1, 11))
    )
    report("AC8 collapse d_N(0,1) <= (4/5)^N", ok, f"d_10(0,1) = {d[-1]} = {float(d[-1]):.6f}", elapsed, 60)


def test_ac09_facts(report):
    t = time.perf_counter()
    rep = dyadic.verify_facts(10)
    z = DyadicPoint.of(F(11, 64))
    printed = (
        [str(w) for w in path(z, "left")] == ["11/64", "5/32", "1/8", "0"]
        and [str(w) for w in path(z, "right")] == ["11/64", "3/16", "1/4", "1/2", "1"]
    )
    elapsed = time.perf_counter() - t
    report(
        "AC9 level-structure facts exhaustive",
        rep.ok and printed and rep.points_checked == 2**10 - 1,
        f"{rep.points_checked} points, {rep.edges_checked} edges, {len(rep.counterexamples)} counterexamples",
        elapsed,
    )


def test_ac10_special_triangles(report):
    A = DyadicParams(F(2, 5))
    a = A.a
    checked = bad = 0
    for N in range(2, 7):
        for z1, z0, z2 in dyadic.special_triangles(N):
            if max(z1.level, z0.level, z2.level) != N:
                continue
            checked += 1
            bad += dyadic.special_triangle_defect(z1, z0, z2, A) != tau(z0.level, A) - tau(z1.level, A)
    spot = dyadic.special_triangle_defect(*(DyadicPoint.of(F(x)) for x in ("1/4", "3/8", "1/2")), A)
    ok = bad == 0 and checked > 0 and spot == 2 * a**3 - a**2 == F(-4, 125)
    report("AC10 special-triangle identity", ok, f"{checked} triangles at depth <= 6, {bad} failures, spot = {spot}")


def test_ac11_tau(report):
    A = DyadicParams(F(2, 5))
    taus = [tau(n, A) for n in range(1, 41)]
    ok = taus[0] == F(4, 5)
    ok &= all(s > t for s, t in zip(taus, taus[1:]))
    ok &= A.tau_infinity == F(2, 3) and all(t > F(2, 3) for t in taus)
    ok &= all(t - F(2, 3) == A.a**n * (1 - 2 * A.a) / (1 - A.a) for n, t in enumerate(taus, 1))
    half = DyadicParams(F(1, 2))
    ok &= all(tau(n, half) == 1 for n in range(1, 21))
    report("AC11 tau behaviour", ok, f"a=2/5: tau_1 = {taus[0]}, tau_40 - 2/3 = {float(taus[-1] - F(2, 3)):.3e}; a=1/2: tau_n = 1, n<=20")


def test_ac12_cli_round_trip(report, tmp_path):
    def call(argv):
        buf = io.StringIO()
        code = run_cli(argv, stdout=buf)
        return code, json.loads(buf.getvalue()) if code == 0 else None

    g, d, dy = tmp_path / "g.csv", tmp_path / "d.csv", tmp_path / "dy.csv"
    ok = True
    for kind in ("euclidean-metric", "perturbed", "ultrametric"):
        ok &= call(["gen", "--kind", kind, "--n", "10", "--seed", "5", "--output", str(g)])[0] == 0
        ok &= call(["metrize", "--input", str(g), "--output", str(d)])[0] == 0
        code, rep = call(["analyze", "--input", str(d)])
        ok &= code == 0 and rep["is_metric"] is True
    code, _ = call(["dyadic", "--a", "2/5", "--depth", "1", "--emit-matrix", str(dy)])
    ok &= code == 0 and dy.read_text() == "0,2/5,1\n2/5,0,2/5\n1,2/5,0\n"
    report("AC12 CLI round trip", ok, "gen -> metrize -> analyze is_metric; depth-1 dyadic matrix reproduced")
