"""Turn an accuracy target into the cheapest certified node budget.

Given radii, V, and a target epsilon, the planner searches per-axis
orders for the smallest grid whose certified bound meets the target.
Anisotropic radii make this interesting: an axis with fast decay
(large rho) needs far fewer nodes, and the combined bound often
certifies the target with fewer points than either bound alone.
"""

from chebbound import EllipseRadii, PLAN_SELECTORS, PlanRequest, compare_plans, plan_nodes


def main() -> None:
    radii = EllipseRadii((2.95, 9.8))
    v, eps = 1.0, 2e-4
    print(f"radii {tuple(radii)}, V = {v}, target epsilon = {eps}")
    print()

    comparison = compare_plans(radii, v, eps)
    print("selector   | budget  | grid points | certified bound | savings vs B")
    for key in PLAN_SELECTORS:
        plan = comparison.plans[key]
        print(
            f"{key:<10} | {str(plan.budget.degrees):<7} | "
            f"{plan.grid_points:11d} | {plan.certified_bound:.6e}    | "
            f"{100 * comparison.savings_vs_b[key]:.1f}%"
        )

    print()
    print("tighter targets on the same radii (COMBINED selector):")
    for target in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10):
        plan = plan_nodes(PlanRequest(radii, v, target, "COMBINED"))
        print(
            f"  eps = {target:.0e}: budget {plan.budget.degrees}, "
            f"{plan.grid_points} points, certified {plan.certified_bound:.3e}"
        )


if __name__ == "__main__":
    main()
