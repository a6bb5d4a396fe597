"""Empirical validation: measured interpolation error vs the certified bounds.

Test families with provable analyticity regions, a dense sup-error probe,
and the domination check (measured error must stay under ``min{a, b}``).
Also hosts the A-vs-B crossover scan and the coefficient-decay check, plus
the side-by-side report of published reference values for the worked
inputs this package reproduces.

Every routine here is deterministic: probe grids are fixed, random probes
use a hard-coded seed, and boundary scans use uniform angle grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from . import jsonio
from .bounds import BoundInputs, bound_a, bound_b, bound_combined
from .ellipse import (
    EllipseRadii,
    GeneralizedBernsteinEllipse,
    estimate_V,
    rho_for_real_singularity,
)
from .interpolation import (
    ChebyshevInterpolant,
    Hyperrectangle,
    NodeBudget,
    compute_coefficients,
    evaluate,
    evaluate_grid,
    interpolate,
)
from .planner import PlanRequest, plan_nodes

__all__ = [
    "TestFunction",
    "VerificationRecord",
    "ScanRecord",
    "ADMISSIBILITY_MARGIN",
    "PROBE_SEED",
    "separable_rational",
    "entire_exponential",
    "nonseparable_rational",
    "polynomial_product",
    "builtin_families",
    "sup_error",
    "verify_domination",
    "default_suite",
    "quick_suite",
    "coefficient_decay_check",
    "crossover_scan",
    "reference_report",
    "records_to_csv",
    "scan_to_csv",
]

#: scheduled radii must stay at or below this fraction of the admissible ones
ADMISSIBILITY_MARGIN = 0.98

#: seed for the uniform random probe points in sup_error
PROBE_SEED = 0x5EED

#: default probe resolutions per dimension (dense; under-sampling the true
#: sup could only hide violations, so these err high)
DEFAULT_PROBE_RESOLUTION = {1: 513, 2: 129, 3: 65}

#: default boundary-scan angles per axis when estimating V in the suite;
#: the builtin families peak at theta in {0, pi}, which every even grid
#: hits exactly, so modest grids suffice (the 1.01 safety covers the rest)
DEFAULT_V_RESOLUTION = {1: 512, 2: 128, 3: 32}


@dataclass(frozen=True)
class TestFunction:
    """An analytic test function with a provable admissible radius per axis."""

    id: str
    domain: Hyperrectangle
    evaluator: Callable[[NDArray], NDArray]
    admissible_rho: tuple[float, ...]  # math.inf for entire functions
    family: str
    description: str
    exact_degrees: tuple[int, ...] | None = None  # polynomials only

    @property
    def dimension(self) -> int:
        return self.domain.dimension


@dataclass(frozen=True)
class VerificationRecord:
    """One (function, radii, budget) domination measurement."""

    function_id: str
    domain: Hyperrectangle
    radii: tuple[float, ...]
    v_estimate: float
    budget: tuple[int, ...]
    empirical_error: float
    bound_a: float
    bound_b: float
    bound_combined: float
    passed: bool


@dataclass(frozen=True)
class ScanRecord:
    """One point of the equal-radii A-vs-B scan."""

    rho: float
    a: float
    b: float
    winner: str  # "A" | "B" | "TIE" | "CROSSOVER" (the bisected final record)


# ---------------------------------------------------------------------------
# builtin families


def _as_domain(domain: Hyperrectangle | None, dimension: int) -> Hyperrectangle:
    if domain is None:
        return Hyperrectangle.unit(dimension)
    if domain.dimension != dimension:
        raise ValueError(
            f"domain has {domain.dimension} axes, expected {dimension}"
        )
    return domain


def separable_rational(
    c: Sequence[float], domain: Hyperrectangle | None = None, id: str | None = None
) -> TestFunction:
    """prod_i 1/(c_i - x_i); poles at x_i = c_i, which must lie off-domain."""
    c = tuple(float(ci) for ci in c)
    dom = _as_domain(domain, len(c))
    admissible = tuple(
        rho_for_real_singularity(ci, dom.axes[i]) for i, ci in enumerate(c)
    )
    carr = np.asarray(c)

    def evaluator(points):
        points = np.asarray(points)
        return np.prod(1.0 / (carr - points), axis=-1)

    return TestFunction(
        id=id or f"sep-rational-d{len(c)}",
        domain=dom,
        evaluator=evaluator,
        admissible_rho=admissible,
        family="separable-rational",
        description=f"prod 1/(c_i - x_i), c={list(c)}",
    )


def entire_exponential(
    alpha: Sequence[float], domain: Hyperrectangle | None = None, id: str | None = None
) -> TestFunction:
    """exp(sum_i alpha_i x_i); entire, so every radius is admissible."""
    alpha = tuple(float(a) for a in alpha)
    dom = _as_domain(domain, len(alpha))
    aarr = np.asarray(alpha)

    def evaluator(points):
        points = np.asarray(points)
        return np.exp(points @ aarr)

    return TestFunction(
        id=id or f"exp-d{len(alpha)}",
        domain=dom,
        evaluator=evaluator,
        admissible_rho=(math.inf,) * len(alpha),
        family="entire-exponential",
        description=f"exp(sum alpha_i x_i), alpha={list(alpha)}",
    )


def nonseparable_rational(
    c: float,
    beta: Sequence[float],
    domain: Hyperrectangle | None = None,
    id: str | None = None,
) -> TestFunction:
    """1/(c - sum_i beta_i x_i) with the singular hyperplane off-domain.

    Per-axis admissible radii are conservative: the slack of the plane,
    pulled back to reference coordinates (c' = c - sum beta_i center_i
    against sum |beta_i| halfwidth_i), is split evenly over the axes, and
    axis i receives the radius whose ellipse has real semi-axis
    1 + slack_i.  Any radii at or below these keep ``sum beta_i z_i``
    away from c on the whole product region.
    """
    c = float(c)
    beta = tuple(float(b) for b in beta)
    d = len(beta)
    dom = _as_domain(domain, d)
    if any(b == 0.0 for b in beta):
        raise ValueError("beta entries must be nonzero")
    centers = [(lo + hi) / 2.0 for lo, hi in dom.axes]
    halves = [(hi - lo) / 2.0 for lo, hi in dom.axes]
    eff_beta = [abs(b) * h for b, h in zip(beta, halves)]
    c_eff = c - sum(b * m for b, m in zip(beta, centers))
    slack = c_eff - sum(eff_beta)
    if slack <= 0:
        raise ValueError(
            f"singular hyperplane touches the domain: c' = {c_eff} must exceed "
            f"sum |beta_i| halfwidth_i = {sum(eff_beta)}"
        )
    admissible = []
    for i in range(d):
        a_i = 1.0 + slack / (d * eff_beta[i])
        admissible.append(a_i + math.sqrt(a_i * a_i - 1.0))
    barr = np.asarray(beta)

    def evaluator(points):
        points = np.asarray(points)
        return 1.0 / (c - points @ barr)

    return TestFunction(
        id=id or f"nonsep-rational-d{d}",
        domain=dom,
        evaluator=evaluator,
        admissible_rho=tuple(admissible),
        family="nonseparable-rational",
        description=f"1/(c - sum beta_i x_i), c={c}, beta={list(beta)}",
    )


def polynomial_product(
    dimension: int, domain: Hyperrectangle | None = None, id: str | None = None
) -> TestFunction:
    """prod_i (x_i^3 - x_i/2 + 1/4): exactness control, degree 3 per axis."""
    dom = _as_domain(domain, dimension)

    def evaluator(points):
        points = np.asarray(points)
        return np.prod(points**3 - points / 2.0 + 0.25, axis=-1)

    return TestFunction(
        id=id or f"poly-cubic-d{dimension}",
        domain=dom,
        evaluator=evaluator,
        admissible_rho=(math.inf,) * dimension,
        family="polynomial",
        description="prod (x_i^3 - x_i/2 + 1/4)",
        exact_degrees=(3,) * dimension,
    )


def builtin_families(dimension: int | None = None) -> list[TestFunction]:
    """The deterministic builtin list, optionally filtered by dimension.

    Rational families get admissible radii computed from their poles, not
    guessed; exponential and polynomial families are entire.
    """
    fams = [
        separable_rational((1.25,)),
        separable_rational((3.0,), id="sep-rational-d1-wide"),
        entire_exponential((1.0,)),
        nonseparable_rational(2.0, (1.0,)),
        polynomial_product(1),
        separable_rational((1.3, 1.6)),
        separable_rational((2.0, 3.0), id="sep-rational-d2-wide"),
        entire_exponential((1.0, -0.5)),
        nonseparable_rational(2.0, (0.5, 0.5)),
        polynomial_product(2),
        separable_rational((1.3, 1.6, 2.2)),
        entire_exponential((0.8, -0.5, 0.3)),
        nonseparable_rational(2.5, (0.5, 0.5, 0.5)),
        polynomial_product(3),
    ]
    if dimension is None:
        return fams
    return [f for f in fams if f.dimension == dimension]


def builtin_function(function_id: str, domain: Hyperrectangle | None = None) -> TestFunction:
    """Look up a builtin by id, optionally rebuilt on a different domain."""
    for f in builtin_families():
        if f.id == function_id:
            if domain is None:
                return f
            rebuilders = {
                "sep-rational-d1": lambda: separable_rational((1.25,), domain),
                "sep-rational-d1-wide": lambda: separable_rational((3.0,), domain, id="sep-rational-d1-wide"),
                "exp-d1": lambda: entire_exponential((1.0,), domain),
                "nonsep-rational-d1": lambda: nonseparable_rational(2.0, (1.0,), domain),
                "poly-cubic-d1": lambda: polynomial_product(1, domain),
                "sep-rational-d2": lambda: separable_rational((1.3, 1.6), domain),
                "sep-rational-d2-wide": lambda: separable_rational((2.0, 3.0), domain, id="sep-rational-d2-wide"),
                "exp-d2": lambda: entire_exponential((1.0, -0.5), domain),
                "nonsep-rational-d2": lambda: nonseparable_rational(2.0, (0.5, 0.5), domain),
                "poly-cubic-d2": lambda: polynomial_product(2, domain),
                "sep-rational-d3": lambda: separable_rational((1.3, 1.6, 2.2), domain),
                "exp-d3": lambda: entire_exponential((0.8, -0.5, 0.3), domain),
                "nonsep-rational-d3": lambda: nonseparable_rational(2.5, (0.5, 0.5, 0.5), domain),
                "poly-cubic-d3": lambda: polynomial_product(3, domain),
            }
            return rebuilders[function_id]()
    known = ", ".join(f.id for f in builtin_families())
    raise ValueError(f"unknown builtin function {function_id!r}; known: {known}")


# ---------------------------------------------------------------------------
# sup-error probing


def _probe_levels(resolution: int) -> list[int]:
    # halving cascade keeps probe sets nested when the resolution doubles
    levels = []
    r = resolution
    while True:
        levels.append(r)
        if r < 66:
            break
        r //= 2
    return levels


def _axis_probes(resolution: int) -> NDArray[np.float64]:
    chunks = []
    for r in _probe_levels(resolution):
        m = np.arange(r)
        chunks.append(np.cos(np.pi * (2 * m + 1) / (2 * r)))
    return np.concatenate(chunks)


def sup_error(
    f: TestFunction, interpolant: ChebyshevInterpolant, resolution: int
) -> float:
    """Dense estimate of ``max |f - I|`` over the domain.

    Probes a product grid of first-kind Chebyshev points (offset from the
    interpolation nodes, where the error vanishes) at ``resolution`` points
    per axis plus the halved cascades 512, 256, ... — so doubling the
    resolution strictly extends the probe set — and 100 * D uniform random
    points from a fixed-seed generator.  An under-estimate of the true sup,
    which can only make domination checks stricter.
    """
    resolution = int(resolution)
    if resolution < 33:
        raise ValueError(f"resolution must be >= 33 per axis, got {resolution}")
    if f.domain != interpolant.domain:
        raise ValueError("function and interpolant domains differ")
    d = f.dimension
    ref = _axis_probes(resolution)
    axes_points = []
    for lo, hi in f.domain.axes:
        axes_points.append((lo + hi) / 2.0 + (hi - lo) / 2.0 * ref)
    mesh = np.meshgrid(*axes_points, indexing="ij")
    pts = np.stack(mesh, axis=-1)
    exact = np.asarray(f.evaluator(pts), dtype=float)
    approx = evaluate_grid(interpolant, axes_points)
    worst = float(np.max(np.abs(exact - approx)))

    rng = np.random.default_rng(PROBE_SEED)
    lo = np.array([a[0] for a in f.domain.axes])
    hi = np.array([a[1] for a in f.domain.axes])
    random_pts = lo + (hi - lo) * rng.random((100 * d, d))
    exact_r = np.asarray(f.evaluator(random_pts), dtype=float)
    approx_r = np.asarray(evaluate(interpolant, random_pts), dtype=float)
    worst = max(worst, float(np.max(np.abs(exact_r - approx_r))))
    return worst


# ---------------------------------------------------------------------------
# domination suite


def _check_margin(f: TestFunction, radii: tuple[float, ...]) -> None:
    if len(radii) != f.dimension:
        raise ValueError(
            f"{f.id}: {len(radii)} radii for a {f.dimension}-dimensional function"
        )
    for i, (r, adm) in enumerate(zip(radii, f.admissible_rho)):
        if r > ADMISSIBILITY_MARGIN * adm:
            raise ValueError(
                f"{f.id}: radius {r} on axis {i} exceeds the admissible "
                f"margin {ADMISSIBILITY_MARGIN} * {adm}"
            )


def verify_domination(
    functions: TestFunction | Sequence[TestFunction],
    radii_schedule: Sequence[Sequence[float]],
    budget_schedule: Sequence[Sequence[int]],
    *,
    probe_resolution: int | None = None,
    v_resolution: int | None = None,
) -> list[VerificationRecord]:
    """Measure sup-error against the combined bound for every combination.

    For each function, radii vector, and budget: estimate V on the
    generalized ellipse, interpolate, probe the true error, evaluate both
    bounds, and record whether the error stays below
    ``combined + 1e-12 + 1e-10 * combined``.  Radii outside the 0.98
    admissibility margin are rejected before any computation.
    """
    if isinstance(functions, TestFunction):
        functions = [functions]
    schedules = [tuple(float(r) for r in radii) for radii in radii_schedule]
    budgets = [tuple(int(n) for n in budget) for budget in budget_schedule]
    for f in functions:
        for radii in schedules:
            _check_margin(f, radii)

    records = []
    for f in functions:
        d = f.dimension
        probe_res = probe_resolution or DEFAULT_PROBE_RESOLUTION[d]
        v_res = v_resolution or DEFAULT_V_RESOLUTION[d]
        for radii in schedules:
            ellipse = GeneralizedBernsteinEllipse(f.domain, EllipseRadii(radii))
            v_hat = estimate_V(f.evaluator, ellipse, resolution=v_res)
            for budget in budgets:
                node_budget = NodeBudget(budget)
                interp = interpolate(f.evaluator, f.domain, node_budget)
                err = sup_error(f, interp, probe_res)
                report = bound_combined(
                    BoundInputs(EllipseRadii(radii), node_budget, v_hat)
                )
                passed = err <= report.combined + 1e-12 + 1e-10 * report.combined
                records.append(
                    VerificationRecord(
                        function_id=f.id,
                        domain=f.domain,
                        radii=radii,
                        v_estimate=v_hat,
                        budget=budget,
                        empirical_error=err,
                        bound_a=report.a_value,
                        bound_b=report.b_value,
                        bound_combined=report.combined,
                        passed=passed,
                    )
                )
    return records


def _scaled_radii(f: TestFunction, factor: float, entire_rho: float) -> tuple[float, ...]:
    return tuple(
        entire_rho if math.isinf(adm) else factor * adm for adm in f.admissible_rho
    )


def default_suite() -> list[VerificationRecord]:
    """The shipped domination suite: >= 60 records over D in {1,2,3}."""
    records: list[VerificationRecord] = []
    fam = {f.id: f for f in builtin_families()}

    records += verify_domination(
        fam["sep-rational-d1"], [(1.9,)], [(n,) for n in range(5, 29, 3)]
    )
    records += verify_domination(
        fam["sep-rational-d1-wide"], [(5.0,)], [(3,), (6,), (9,), (12,)]
    )
    records += verify_domination(
        fam["exp-d1"], [(2.0,), (8.0,), (20.0,)], [(5,), (10,), (15,)]
    )
    records += verify_domination(
        fam["nonsep-rational-d1"], [(3.0,)], [(4,), (8,), (12,), (16,)]
    )
    records += verify_domination(fam["poly-cubic-d1"], [(4.0,)], [(3,), (5,), (8,)])

    sep2 = fam["sep-rational-d2"]
    records += verify_domination(
        sep2,
        [_scaled_radii(sep2, 0.9, 0.0), _scaled_radii(sep2, 0.5, 0.0)],
        [(4, 4), (8, 8), (12, 12), (10, 6)],
    )
    records += verify_domination(
        fam["sep-rational-d2-wide"], [(3.0, 5.0)], [(4, 6), (8, 10), (10, 4), (12, 8)]
    )
    records += verify_domination(
        fam["exp-d2"], [(3.0, 3.0), (6.0, 2.0)], [(6, 6), (10, 8)]
    )
    records += verify_domination(
        fam["nonsep-rational-d2"], [(3.0, 3.0)], [(6, 6), (10, 10), (12, 5)]
    )
    records += verify_domination(
        fam["poly-cubic-d2"], [(2.5, 2.5)], [(3, 3), (5, 4), (4, 6)]
    )

    sep3 = fam["sep-rational-d3"]
    records += verify_domination(
        sep3,
        [_scaled_radii(sep3, 0.9, 0.0)],
        [(4, 4, 4), (8, 6, 5), (6, 6, 6)],
    )
    records += verify_domination(
        fam["sep-rational-d3"], [(2.0, 2.4, 3.0)], [(7, 6, 5)]
    )
    records += verify_domination(
        fam["exp-d3"], [(2.5, 2.5, 2.5)], [(5, 5, 5), (8, 6, 4), (6, 5, 4)]
    )
    records += verify_domination(
        fam["nonsep-rational-d3"], [(2.6, 2.6, 2.6)], [(5, 5, 5), (7, 6, 5), (4, 4, 4)]
    )
    records += verify_domination(
        fam["poly-cubic-d3"], [(2.0, 2.0, 2.0)], [(3, 3, 3), (4, 3, 5)]
    )
    return records


def quick_suite() -> list[VerificationRecord]:
    """A fast subset for smoke runs (same machinery, fewer records)."""
    records: list[VerificationRecord] = []
    fam = {f.id: f for f in builtin_families()}
    records += verify_domination(
        fam["sep-rational-d1"], [(1.9,)], [(5,), (15,), (25,)], probe_resolution=129
    )
    records += verify_domination(
        fam["exp-d2"], [(3.0, 3.0)], [(6, 6)], probe_resolution=65
    )
    records += verify_domination(
        fam["sep-rational-d2"],
        [_scaled_radii(fam["sep-rational-d2"], 0.9, 0.0)],
        [(8, 8)],
        probe_resolution=65,
    )
    records += verify_domination(
        fam["poly-cubic-d1"], [(4.0,)], [(3,)], probe_resolution=129
    )
    return records


# ---------------------------------------------------------------------------
# coefficient decay


def coefficient_decay_check(f: TestFunction, rho: float, n: int) -> bool:
    """Whether every coefficient respects the decay-plus-aliasing envelope.

    Interpolation coefficients fold the aliased tail of the true expansion
    into indices 0..N, so the pure decay rate ``2 rho^-k V`` gains the
    folded-tail slack ``2 V rho^-(2N-k) / (1 - rho^-2N)`` and an absolute
    1e-12 cushion.
    """
    if f.dimension != 1:
        raise ValueError("coefficient decay check is univariate")
    n = int(n)
    if n < 1:
        raise ValueError(f"need at least degree 1, got {n}")
    rho = float(rho)
    _check_margin(f, (rho,))
    ellipse = GeneralizedBernsteinEllipse(f.domain, EllipseRadii((rho,)))
    v_hat = estimate_V(f.evaluator, ellipse, resolution=DEFAULT_V_RESOLUTION[1])
    interp = interpolate(f.evaluator, f.domain, NodeBudget((n,)))
    coeffs = np.abs(interp.coefficients)
    tail_denom = 1.0 - rho ** (-2.0 * n)
    for k in range(n + 1):
        envelope = (
            2.0 * v_hat * rho ** (-float(k))
            + 2.0 * v_hat * rho ** (-float(2 * n - k)) / tail_denom
            + 1e-12
        )
        if coeffs[k] > envelope:
            return False
    return True


# ---------------------------------------------------------------------------
# A-vs-B crossover scan


def _winner_tag(a: float, b: float) -> str:
    gap = abs(a - b)
    scale = max(a, b)
    if gap <= 1e-15 * scale:
        return "TIE"
    return "A" if a < b else "B"


def _scan_point(rho: float, n: int, d: int, v: float) -> tuple[float, float]:
    inputs = BoundInputs(
        EllipseRadii((rho,) * d), NodeBudget((n,) * d), v
    )
    return bound_a(inputs)[0], bound_b(inputs)


def crossover_scan(
    n: int,
    d: int,
    rho_lo: float,
    rho_hi: float,
    steps: int = 200,
    v_bound: float = 1.0,
) -> list[ScanRecord]:
    """A and B on a log-uniform equal-radii grid, plus bisected crossovers.

    Scans ``rho`` over ``steps`` log-spaced points with all radii equal and
    the budget ``(n, ..., n)``.  Wherever the winner flips between
    consecutive grid points, bisects ``a - b`` to within 1e-6 in rho and
    appends the crossing as a final record tagged ``winner="CROSSOVER"``.
    """
    if not 1.0 < rho_lo < rho_hi:
        raise ValueError(f"need 1 < rho_lo < rho_hi, got {rho_lo}, {rho_hi}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    grid = np.exp(np.linspace(math.log(rho_lo), math.log(rho_hi), int(steps)))
    records = []
    for rho in grid:
        a, b = _scan_point(float(rho), n, d, v_bound)
        records.append(ScanRecord(float(rho), a, b, _winner_tag(a, b)))

    crossings = []
    for left, right in zip(records[:-1], records[1:]):
        s_left = left.a - left.b
        s_right = right.a - right.b
        if s_left == 0.0 or s_right == 0.0 or (s_left < 0) == (s_right < 0):
            continue
        lo, hi = left.rho, right.rho
        f_lo = s_left
        while hi - lo > 1e-6:
            mid = (lo + hi) / 2.0
            a_mid, b_mid = _scan_point(mid, n, d, v_bound)
            s_mid = a_mid - b_mid
            if s_mid == 0.0:
                lo = hi = mid
                break
            if (s_mid < 0) == (f_lo < 0):
                lo = mid
                f_lo = s_mid
            else:
                hi = mid
        root = (lo + hi) / 2.0
        a_root, b_root = _scan_point(root, n, d, v_bound)
        crossings.append(ScanRecord(root, a_root, b_root, "CROSSOVER"))
    return records + crossings


# ---------------------------------------------------------------------------
# published reference values for the worked inputs


#: published reference values for the worked inputs; our computed values
#: differ (see the reproduction report), so these are recorded targets,
#: never assertions
PUBLISHED_REFERENCES = {
    "bound-b rho=(2.3,1.8) n=(10,10) v=1": 0.0018,
    "bound-a rho=(2.3,1.8) n=(10,10) v=1": 0.0066,
    "bound-b rho=(2.3,2.5) n=(10,10) v=1": 0.0017,
    "bound-a rho=(2.3,2.5) n=(10,10) v=1": 0.0011,
    "plan-b rho=(2.95,9.8) v=1 eps=2e-4 grid": 72,
    "plan-b rho=(2.95,9.8) v=1 eps=2e-4 budget": (11, 5),
    "plan-a rho=(2.95,9.8) v=1 eps=2e-4 grid": 45,
    "plan-a rho=(2.95,9.8) v=1 eps=2e-4 budget": (8, 4),
    "crossover equal-rho n=10 d=2": 2.800882,
}


def reference_report() -> list[dict]:
    """Published value vs computed value, side by side, for every worked input.

    Includes the certified bounds of the published budgets themselves, so
    readers can see whether those budgets certify the stated target even
    where our minimal plans differ.
    """
    rows = []

    def row(case: str, published, computed) -> None:
        rows.append({"case": case, "published": published, "computed": computed})

    ex1 = BoundInputs(EllipseRadii((2.3, 1.8)), NodeBudget((10, 10)), 1.0)
    ex2 = BoundInputs(EllipseRadii((2.3, 2.5)), NodeBudget((10, 10)), 1.0)
    row("bound-b rho=(2.3,1.8) n=(10,10) v=1", 0.0018, bound_b(ex1))
    row("bound-a rho=(2.3,1.8) n=(10,10) v=1", 0.0066, bound_a(ex1)[0])
    row("bound-b rho=(2.3,2.5) n=(10,10) v=1", 0.0017, bound_b(ex2))
    row("bound-a rho=(2.3,2.5) n=(10,10) v=1", 0.0011, bound_a(ex2)[0])

    radii = EllipseRadii((2.95, 9.8))
    plan_b = plan_nodes(PlanRequest(radii, 1.0, 2e-4, "B"))
    plan_a = plan_nodes(PlanRequest(radii, 1.0, 2e-4, "A"))
    row(
        "plan-b rho=(2.95,9.8) v=1 eps=2e-4",
        "budget (11,5), 72 points",
        f"budget {plan_b.budget.degrees}, {plan_b.grid_points} points",
    )
    row(
        "plan-a rho=(2.95,9.8) v=1 eps=2e-4",
        "budget (8,4), 45 points",
        f"budget {plan_a.budget.degrees}, {plan_a.grid_points} points",
    )
    row(
        "certified b of published budget (11,5)",
        "<= 2e-4 (claimed)",
        bound_b(BoundInputs(radii, NodeBudget((11, 5)), 1.0)),
    )
    row(
        "certified a of published budget (8,4)",
        "<= 2e-4 (claimed)",
        bound_a(BoundInputs(radii, NodeBudget((8, 4)), 1.0))[0],
    )

    scan = crossover_scan(10, 2, 1.1, 20.0, steps=200)
    crossings = [r.rho for r in scan if r.winner == "CROSSOVER"]
    row(
        "crossover equal-rho n=10 d=2",
        2.800882,
        crossings[0] if len(crossings) == 1 else f"{len(crossings)} crossings: {crossings}",
    )
    return rows


# ---------------------------------------------------------------------------
# CSV emission


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return jsonio.format_float(value)
    if isinstance(value, (tuple, list)):
        return " ".join(_format_cell(v) for v in value)
    return str(value)


RECORD_CSV_HEADER = (
    "function_id,dimension,domain,radii,v_estimate,budget,"
    "empirical_error,bound_a,bound_b,bound_combined,passed"
)


def records_to_csv(records: Sequence[VerificationRecord]) -> str:
    """One row per record; lists are space-separated inside a cell."""
    lines = [RECORD_CSV_HEADER]
    for r in records:
        domain = ";".join(
            f"{jsonio.format_float(lo)}:{jsonio.format_float(hi)}" for lo, hi in r.domain.axes
        )
        lines.append(
            jsonio.csv_line(
                [
                    r.function_id,
                    str(r.domain.dimension),
                    domain,
                    _format_cell(r.radii),
                    _format_cell(r.v_estimate),
                    _format_cell(r.budget),
                    _format_cell(r.empirical_error),
                    _format_cell(r.bound_a),
                    _format_cell(r.bound_b),
                    _format_cell(r.bound_combined),
                    _format_cell(r.passed),
                ]
            )
        )
    return "\n".join(lines) + "\n"


SCAN_CSV_HEADER = "rho,a,b,winner"


def scan_to_csv(records: Sequence[ScanRecord]) -> str:
    """Figure-style sweep data: columns rho, a, b, winner."""
    lines = [SCAN_CSV_HEADER]
    for r in records:
        lines.append(
            jsonio.csv_line(
                [
                    jsonio.format_float(r.rho),
                    jsonio.format_float(r.a),
                    jsonio.format_float(r.b),
                    r.winner,
                ]
            )
        )
    return "\n".join(lines) + "\n"
