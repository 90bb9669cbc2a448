"""Acceptance gate: every headline claim at its stated tolerance.

Each criterion prints one PASS/FAIL line (run ``pytest -s`` to see them
all); a FAIL also fails the test.
"""

import json
import math
import random
import time

from benfordlab.cli import main
from benfordlab.digits import DigitPrefix, benford_prefix_prob, prefix_of
from benfordlab.distributions import (
    BenfordReference,
    EdgeConcentrated,
    SineBenford,
)
from benfordlab.fibonacci import fib_significands_exact, fib_significands_logspace
from benfordlab.quadrature import integrate
from benfordlab.sums import (
    expected_sum_quadrature,
    expected_sum_theoretical,
    theorem_bounds,
)

LN10 = math.log(10.0)

# significand sums of the first 50000 Fibonacci numbers by first digit
REFERENCE_SUMS = {
    1: 21714.0,
    2: 21712.2,
    3: 21717.8,
    4: 21707.4,
    5: 21713.2,
    6: 21725.0,
    7: 21702.7,
    8: 21717.4,
    9: 21715.5,
}

MC_SEED = 1


def criterion(label: str, ok: bool, detail: str = "") -> None:
    print(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
    assert ok, f"{label}: {detail}"


def test_fibonacci_sum_table_reproduction(capsys):
    start = time.perf_counter()
    code = main(["--format", "json", "fibonacci", "--count", "50000"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    sums = {
        int(row["prefix"]): row["sum"]
        for row in json.loads(out)["sums"]["rows"]
    }
    worst = max(abs(sums[d] - REFERENCE_SUMS[d]) for d in range(1, 10))
    with capsys.disabled():
        criterion(
            "fibonacci 50000 sum table within 0.1 per digit",
            worst <= 0.1 and elapsed < 1.0,
            f"worst_diff={worst:.4f} elapsed={elapsed:.2f}s",
        )


def test_theoretical_reference_for_50000_items(capsys):
    code = main(["--format", "json", "fibonacci", "--count", "50000"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    total = payload["sums"]["total_reference"]
    direct = 50000 * expected_sum_theoretical(1)
    with capsys.disabled():
        criterion(
            "theoretical sum reference prints 21714.7",
            abs(total - 21714.7) <= 0.05 and abs(direct - 21714.7) <= 0.05,
            f"total_reference={total}",
        )


def test_exact_and_logspace_paths_agree(capsys):
    start = time.perf_counter()
    worst = 0.0
    for log_s, exact_s in zip(
        fib_significands_logspace(5000), fib_significands_exact(5000)
    ):
        worst = max(worst, abs(log_s - exact_s))
    elapsed = time.perf_counter() - start
    with capsys.disabled():
        criterion(
            "log-space and exact significands agree to 1e-6 (k<=5000)",
            worst <= 1e-6 and elapsed < 30.0,
            f"worst={worst:.3e} elapsed={elapsed:.2f}s",
        )


def test_depth_two_family_misses_third_digit(capsys):
    dist = SineBenford(2)
    observed = integrate(dist.pdf, 1.11, 1.12, tol=1e-12)
    required = math.log10(112 / 111)
    ok = abs(observed - 2.86e-3) <= 0.005e-3 and abs(required - 3.89e-3) <= 0.01e-3
    with capsys.disabled():
        criterion(
            "111-bucket mass is 2.86e-3 against required 3.89e-3",
            ok,
            f"observed={observed:.6e} required={required:.6e}",
        )


def test_flat_density_reproduces_reference_at_all_depths(capsys):
    flat = BenfordReference().wrapped_density()
    rng = random.Random(MC_SEED)
    worst = 0.0
    for depth in range(1, 5):
        reference = expected_sum_theoretical(depth)
        values = (
            range(10 ** (depth - 1), 10**depth)
            if depth <= 3
            else [rng.randrange(10**3, 10**4) for _ in range(100)]
        )
        for x in values:
            got = expected_sum_quadrature(flat, DigitPrefix.from_value(x))
            worst = max(worst, abs(got - reference))
    with capsys.disabled():
        criterion(
            "flat-density expected sums equal 10**(1-n)/ln10 (n<=4)",
            worst <= 1e-10,
            f"max_err={worst:.3e}",
        )


def test_expected_sum_sandwich_and_edge_approach(capsys):
    epsilons = (0.1, 0.01, 0.001)
    worst_violation = -math.inf
    approach_ok = True
    checks = 0
    for depth in (1, 2, 3):
        plain = [BenfordReference().wrapped_density(), SineBenford(depth).wrapped_density()]
        edges = {
            (side, eps): EdgeConcentrated(depth, eps, side).wrapped_density()
            for side in ("lower", "upper")
            for eps in epsilons
        }
        for x in range(10 ** (depth - 1), 10**depth):
            prefix = DigitPrefix.from_value(x)
            b = theorem_bounds(prefix)
            for density in plain:
                got = expected_sum_quadrature(density, prefix)
                worst_violation = max(worst_violation, b.lower - got, got - b.upper)
                checks += 1
            for side in ("lower", "upper"):
                target = b.lower if side == "lower" else b.upper
                gaps = []
                for eps in epsilons:
                    got = expected_sum_quadrature(edges[side, eps], prefix)
                    worst_violation = max(worst_violation, b.lower - got, got - b.upper)
                    gap = abs(got - target)
                    if gap > 2 * eps * (b.upper - b.lower):
                        approach_ok = False
                    gaps.append(gap)
                    checks += 1
                if not gaps[0] > gaps[1] > gaps[2]:
                    approach_ok = False
    with capsys.disabled():
        criterion(
            "all constructed families inside bounds, edges approach them",
            worst_violation <= 1e-9 and approach_ok,
            f"checks={checks} worst_violation={worst_violation:.3e}",
        )


def test_bound_gap_identity_through_depth_five(capsys):
    worst_err = 0.0
    shape_ok = True
    for depth in range(1, 6):
        first = 10 ** (depth - 1)
        max_rel = -math.inf
        argmax = 0
        for x in range(first, 10**depth):
            rel = theorem_bounds(DigitPrefix.from_value(x)).relative_gap
            worst_err = max(worst_err, abs(rel * x - 1.0))
            if rel > max_rel:
                max_rel = rel
                argmax = x
        if argmax != first or abs(max_rel * first - 1.0) > 1e-12:
            shape_ok = False
    with capsys.disabled():
        criterion(
            "relative gap equals 1/x, worst case 10**(1-n) (n<=5)",
            worst_err <= 1e-12 and shape_ok,
            f"max_identity_err={worst_err:.3e}",
        )


def test_property_marginalization_and_normalization(capsys):
    worst_marginal = 0.0
    for depth in (2, 3, 4):
        for x in range(10 ** (depth - 2), 10 ** (depth - 1)):
            parent = DigitPrefix.from_value(x)
            total = math.fsum(benford_prefix_prob(parent.child(d)) for d in range(10))
            worst_marginal = max(worst_marginal, abs(total - benford_prefix_prob(parent)))
    worst_norm = 0.0
    for depth in (1, 2, 3, 4):
        total = math.fsum(
            benford_prefix_prob(DigitPrefix.from_value(x))
            for x in range(10 ** (depth - 1), 10**depth)
        )
        worst_norm = max(worst_norm, abs(total - 1.0))
    with capsys.disabled():
        criterion(
            "digit-mass marginalization and normalization (depth<=4)",
            worst_marginal <= 1e-12 and worst_norm <= 1e-12,
            f"marginal={worst_marginal:.3e} norm={worst_norm:.3e}",
        )


def test_property_sampler_roundtrip(capsys):
    dists = [BenfordReference(), SineBenford(1), SineBenford(2), SineBenford(3)]
    worst = 0.0
    for dist in dists:
        for i in range(10**4):
            u = (i + 0.5) / 10**4
            worst = max(worst, abs(dist.cdf(dist.sample(u)) - u))
    with capsys.disabled():
        criterion(
            "sampler round trip |cdf(inverse(u)) - u| <= 1e-10 on 1e4 grid",
            worst <= 1e-10,
            f"worst={worst:.3e}",
        )


def test_property_monte_carlo_two_digit_frequencies(capsys):
    n = 10**6
    dist = SineBenford(2)
    rng = random.Random(MC_SEED)
    counts = {}
    for _ in range(n):
        value = prefix_of(dist.sample(rng.random()), 2).value
        counts[value] = counts.get(value, 0) + 1
    worst_z = 0.0
    for x in range(10, 100):
        p = dist.bucket_mass(DigitPrefix.from_value(x))
        standard_error = math.sqrt(p * (1 - p) / n)
        z = abs(counts.get(x, 0) / n - p) / standard_error
        worst_z = max(worst_z, z)
    with capsys.disabled():
        criterion(
            "1e6-sample two-digit frequencies within 3 standard errors",
            worst_z <= 3.0,
            f"worst_z={worst_z:.2f} seed={MC_SEED}",
        )
