"""Acceptance criteria for the package, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s``) and
asserts the criterion at its stated tolerance and runtime limit.  The
high-precision evaluator in ``highprec.py`` (mpmath, 60 digits, written
independently against the formulas) is the ground truth for all formula
comparisons.
"""

import itertools
import math
import random
import time

import numpy as np
from mpmath import mp, mpf

import highprec as hp
from chebbound.bounds import (
    BoundInputs,
    MParams,
    bound_a,
    bound_a_for_sigma,
    bound_b,
    bound_combined,
    bound_univariate,
    m_upper_bound,
    recursive_bound_B,
    recursive_bound_B_min,
)
from chebbound.ellipse import (
    EllipseRadii,
    GeneralizedBernsteinEllipse,
    estimate_V,
)
from chebbound.interpolation import (
    NodeBudget,
    alias_index,
    chebyshev_T,
    interpolate,
    univariate_nodes,
)
from chebbound.planner import PLAN_SELECTORS, PlanRequest, compare_plans, plan_nodes
from chebbound.verification import (
    builtin_families,
    coefficient_decay_check,
    crossover_scan,
    default_suite,
    reference_report,
    sup_error,
)

_TINY = 2.2250738585072014e-308  # smallest normal double


def _report(num: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} — {detail}"
    print(line)
    assert ok, line


def _rel_vs_oracle(got: float, want) -> float:
    """Relative error against an mpmath value, honoring the underflow policy."""
    with mp.workdps(60):
        tiny = mpf(_TINY)
        if want == 0:
            return abs(got)
        if want < tiny:
            # below the normal double range the implementation reports 0.0
            return 0.0 if got == 0.0 else 1.0
        if got == 0.0:
            # tolerate either side within a hair of the cutoff
            return 0.0 if want < tiny * (1 + mpf("1e-9")) else 1.0
        return float(abs(mpf(got) - want) / want)


def test_criterion_1_oracle_equivalence():
    """All four bound formulas match the 60-digit evaluator to 1e-12 relative."""
    rng = random.Random(0xC1)
    t0 = time.monotonic()
    worst = 0.0
    comparisons = 0
    for _ in range(200):
        d = rng.choice((1, 2, 3, 4))
        rho = tuple(rng.uniform(1.05, 50.0) for _ in range(d))
        n = tuple(rng.randint(0, 200) for _ in range(d))
        v = rng.uniform(1e-6, 10.0)
        sigma = list(range(d))
        rng.shuffle(sigma)
        sigma = tuple(sigma)
        # the magnitude bound needs 1 + eps strictly below every radius
        eps_cap = min(0.5, 0.9 * (min(rho) - 1.0))
        eps = rng.choice((0.0, rng.uniform(0.0, eps_cap)))
        variant = rng.choice(("consistent", "literal"))
        inputs = BoundInputs(EllipseRadii(rho), NodeBudget(n), v)
        pairs = [
            (bound_b(inputs), hp.bound_b(rho, n, v)),
            (
                bound_a_for_sigma(inputs, sigma, variant=variant),
                hp.bound_a_for_sigma(rho, n, v, sigma, variant=variant),
            ),
            (m_upper_bound(inputs, MParams(eps)), hp.m_upper_bound(rho, n, v, eps)),
            (
                recursive_bound_B(inputs, MParams(eps)),
                hp.recursive_bound_B(rho, n, v, eps),
            ),
        ]
        for got, want in pairs:
            comparisons += 1
            worst = max(worst, _rel_vs_oracle(got, want))
    elapsed = time.monotonic() - t0
    ok = worst <= 1e-12 and elapsed < 60.0
    _report(
        1,
        "oracle equivalence",
        ok,
        f"{comparisons} comparisons on 200 inputs, worst rel err {worst:.3e}, "
        f"{elapsed:.1f} s (< 60 s)",
    )


def test_criterion_2_soundness_suite():
    """Empirical sup-error never exceeds min(a, b) on the default suite."""
    t0 = time.monotonic()
    records = default_suite()
    elapsed = time.monotonic() - t0
    failed = [r for r in records if not r.passed]
    ok = len(records) >= 60 and not failed and elapsed < 180.0
    _report(
        2,
        "soundness suite",
        ok,
        f"{len(records)} records (>= 60), {len(records) - len(failed)} passed, "
        f"{elapsed:.1f} s (< 180 s)",
    )


def test_criterion_3_univariate_base_case():
    """1/(1.25 - x) at rho=1.9: the bound holds and is within 1e4 of the error."""
    f = builtin_families(1)[0]
    assert f.id == "sep-rational-d1"
    rho = 1.9
    ellipse = GeneralizedBernsteinEllipse(f.domain, EllipseRadii((rho,)))
    v_hat = estimate_V(f.evaluator, ellipse, resolution=512)
    lo_ratio, hi_ratio = math.inf, 0.0
    sound = True
    for n in range(1, 31):
        interp = interpolate(f.evaluator, f.domain, NodeBudget((n,)))
        err = sup_error(f, interp, 513)
        bnd = bound_univariate(rho, n, v_hat)
        sound = sound and err <= bnd
        ratio = bnd / err
        lo_ratio = min(lo_ratio, ratio)
        hi_ratio = max(hi_ratio, ratio)
    ok = sound and lo_ratio >= 1.0 and hi_ratio <= 1e4
    _report(
        3,
        "univariate base case",
        ok,
        f"N=1..30 all bounded, bound/error in [{lo_ratio:.1f}, {hi_ratio:.1f}] "
        f"within [1, 1e4]",
    )


def test_criterion_4_worked_example_reproduction():
    """Worked inputs match the oracle; qualitative claims hold; report exists."""
    # (a) a and b for the worked inputs and the equal-radii figure setting
    worst = 0.0
    cases = [
        ((2.3, 1.8), (10, 10)),
        ((2.3, 2.5), (10, 10)),
        ((2.95, 9.8), (11, 5)),
        ((2.95, 9.8), (8, 4)),
        ((2.0, 2.0), (10, 10)),
        ((2.8, 2.8), (10, 10)),
        ((5.7, 5.7), (10, 10)),
        ((15.0, 15.0), (10, 10)),
    ]
    for rho, n in cases:
        inputs = BoundInputs(EllipseRadii(rho), NodeBudget(n), 1.0)
        worst = max(worst, _rel_vs_oracle(bound_b(inputs), hp.bound_b(rho, n, 1)))
        worst = max(worst, _rel_vs_oracle(bound_a(inputs)[0], hp.bound_a(rho, n, 1)))
    part_a = worst <= 1e-12

    # (b) unique B -> A flip on (1.1, 20) and COMBINED beating B on grid size
    records = crossover_scan(10, 2, 1.1, 20.0, steps=200)
    crossings = [r for r in records if r.winner == "CROSSOVER"]
    grid_winners = [r.winner for r in records if r.winner != "CROSSOVER"]
    flips = [
        i for i in range(1, len(grid_winners))
        if grid_winners[i] != grid_winners[i - 1]
    ]
    unique_flip = (
        len(crossings) == 1
        and len(flips) == 1
        and grid_winners[0] == "B"
        and grid_winners[-1] == "A"
    )
    comparison = compare_plans(EllipseRadii((2.95, 9.8)), 1.0, 2e-4)
    fewer_points = (
        comparison.plans["COMBINED"].grid_points < comparison.plans["B"].grid_points
    )
    part_b = unique_flip and fewer_points

    # (c) side-by-side reproduction report including the published crossover
    rows = {row["case"]: row for row in reference_report()}
    required_published = {
        "bound-b rho=(2.3,1.8) n=(10,10) v=1": 0.0018,
        "bound-a rho=(2.3,1.8) n=(10,10) v=1": 0.0066,
        "bound-b rho=(2.3,2.5) n=(10,10) v=1": 0.0017,
        "bound-a rho=(2.3,2.5) n=(10,10) v=1": 0.0011,
        "crossover equal-rho n=10 d=2": 2.800882,
    }
    part_c = all(
        case in rows and rows[case]["published"] == published
        for case, published in required_published.items()
    )
    part_c = part_c and "plan-b rho=(2.95,9.8) v=1 eps=2e-4" in rows
    part_c = part_c and "plan-a rho=(2.95,9.8) v=1 eps=2e-4" in rows

    ok = part_a and part_b and part_c
    _report(
        4,
        "worked-example reproduction",
        ok,
        f"oracle match worst {worst:.2e} (a: {part_a}); unique flip and "
        f"{comparison.plans['COMBINED'].grid_points} < "
        f"{comparison.plans['B'].grid_points} grid points (b: {part_b}); "
        f"report rows present (c: {part_c})",
    )


def _selector_value(selector, rho, n, v):
    inputs = BoundInputs(EllipseRadii(rho), NodeBudget(n), v)
    if selector == "A":
        return bound_a(inputs)[0]
    if selector == "B":
        return bound_b(inputs)
    if selector == "COMBINED":
        return bound_combined(inputs).combined
    return recursive_bound_B_min(inputs)[0]


def _brute_optimum(selector, rho, v, eps, cap):
    """Exact search over the budget box N_i <= cap via last-axis bisection."""
    d = len(rho)
    best = None
    for prefix in itertools.product(range(cap + 1), repeat=d - 1):
        if _selector_value(selector, rho, prefix + (cap,), v) > eps:
            continue
        lo, hi = 0, cap
        while lo < hi:
            mid = (lo + hi) // 2
            if _selector_value(selector, rho, prefix + (mid,), v) <= eps:
                hi = mid
            else:
                lo = mid + 1
        budget = prefix + (lo,)
        points = 1
        for k in budget:
            points *= k + 1
        key = (points, budget)
        if best is None or key < best:
            best = key
    return best


def test_criterion_5_planner_optimality():
    """plan_nodes equals the brute-force optimum whenever it lies in the box."""
    rng = random.Random(0xC5)
    cap = 40
    t0 = time.monotonic()
    exact, dominated = 0, 0
    ok = True
    for _ in range(30):
        d = rng.choice((1, 2, 3))
        rho = tuple(rng.uniform(1.2, 12.0) for _ in range(d))
        eps = 10.0 ** rng.uniform(-10.0, -1.0)
        v = rng.uniform(0.1, 10.0)
        for selector in PLAN_SELECTORS:
            plan = plan_nodes(PlanRequest(EllipseRadii(rho), v, eps, selector))
            brute = _brute_optimum(selector, rho, v, eps, cap)
            if all(k <= cap for k in plan.budget.degrees):
                exact += 1
                if brute is None or (plan.grid_points, plan.budget.degrees) != brute:
                    ok = False
            else:
                dominated += 1
                if brute is not None and brute[0] < plan.grid_points:
                    ok = False
    elapsed = time.monotonic() - t0
    ok = ok and elapsed < 120.0 and exact >= 40
    _report(
        5,
        "planner optimality",
        ok,
        f"30 requests x 4 selectors: {exact} verified exactly in the box, "
        f"{dominated} optimum-outside-box dominance checks, {elapsed:.1f} s (< 120 s)",
    )


def test_criterion_6_aliasing_identity():
    """T_k equals T_{m(k,N)} on the order-N extrema grid."""
    worst = 0.0
    for n in range(1, 17):
        nodes = univariate_nodes(n)
        for k in range(4 * n + 1):
            m = alias_index(k, n)
            diff = float(np.max(np.abs(chebyshev_T(k, nodes) - chebyshev_T(m, nodes))))
            worst = max(worst, diff)
    ok = worst <= 1e-12
    _report(
        6,
        "aliasing identity",
        ok,
        f"N=1..16, k=0..4N: worst node deviation {worst:.3e} (<= 1e-12)",
    )


def test_criterion_7_coefficient_decay():
    """Every builtin univariate function passes the decay envelope check."""
    checked = 0
    ok = True
    for f in builtin_families(1):
        rho = 4.0 if math.isinf(f.admissible_rho[0]) else 0.98 * f.admissible_rho[0]
        for n in (10, 20, 30):
            checked += 1
            if not coefficient_decay_check(f, rho, n):
                ok = False
    _report(
        7,
        "coefficient decay",
        ok,
        f"{checked} (function, N) schedules across {len(builtin_families(1))} "
        f"univariate builtins",
    )


def test_criterion_8_monotonicity_and_linearity():
    """1000 random trials per property: rho/N monotone, exactly linear in V."""
    rng = random.Random(0xC8)
    functions = [
        ("b", bound_b),
        ("a", lambda i: bound_a(i)[0]),
        ("m", m_upper_bound),
        ("recursive", recursive_bound_B),
    ]
    violations = {"rho": 0, "n": 0, "v": 0}
    for _ in range(1000):
        d = rng.choice((1, 2, 3, 4))
        rho = tuple(rng.uniform(1.05, 30.0) for _ in range(d))
        n = tuple(rng.randint(0, 120) for _ in range(d))
        v = rng.uniform(0.01, 100.0)
        base = BoundInputs(EllipseRadii(rho), NodeBudget(n), v)
        rho_up = tuple(r + 0.05 * (r - 1.0) for r in rho)
        bumped_axis = rng.randrange(d)
        n_up = tuple(
            k + (rng.randint(1, 10) if i == bumped_axis else 0)
            for i, k in enumerate(n)
        )
        scale = 2.0 ** rng.choice((-3, 2, 7))
        wider = BoundInputs(EllipseRadii(rho_up), NodeBudget(n), v)
        deeper = BoundInputs(EllipseRadii(rho), NodeBudget(n_up), v)
        scaled = BoundInputs(EllipseRadii(rho), NodeBudget(n), v * scale)
        for _, fn in functions:
            value = fn(base)
            if not fn(wider) < value:
                violations["rho"] += 1
            if not fn(deeper) <= value:
                violations["n"] += 1
            if fn(scaled) != scale * value:
                violations["v"] += 1
    ok = all(count == 0 for count in violations.values())
    _report(
        8,
        "monotonicity and linearity",
        ok,
        f"1000 trials x 4 bounds: violations {violations} (all must be 0)",
    )


def test_criterion_9_dominance_chain():
    """recursive_bound_B never exceeds the identity-order telescoping bound."""
    rng = random.Random(0xC9)
    worst_excess = 0.0
    ok = True
    for _ in range(500):
        d = rng.choice((1, 2, 3, 4))
        rho = tuple(rng.uniform(1.05, 50.0) for _ in range(d))
        n = tuple(rng.randint(0, 200) for _ in range(d))
        v = rng.uniform(1e-6, 10.0)
        inputs = BoundInputs(EllipseRadii(rho), NodeBudget(n), v)
        recursive = recursive_bound_B(inputs)
        telescoping = bound_a_for_sigma(inputs, tuple(range(d)))
        if recursive > telescoping * (1.0 + 1e-15):
            ok = False
            if telescoping > 0:
                worst_excess = max(worst_excess, recursive / telescoping - 1.0)
    _report(
        9,
        "dominance chain",
        ok,
        f"500 inputs: recursive <= identity-order bound * (1 + 1e-15)"
        + ("" if ok else f", worst excess {worst_excess:.3e}"),
    )
