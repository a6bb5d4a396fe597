"""Certify an interpolation error before computing a single sample.

The bounds need three ingredients per axis: the ellipse radius rho (how
far f extends analytically off the interval), the order N, and one global
magnitude bound V on the ellipse.  Given those, min{a, b} caps the
sup-norm interpolation error on the whole box.

Here we bound the error of interpolating f(x, y) = 1/((1.7 - x)(2.2 - y))
on [-1, 1]^2 and then check the certificate against the measured error.
"""

import numpy as np

from chebbound import (
    BoundInputs,
    EllipseRadii,
    GeneralizedBernsteinEllipse,
    Hyperrectangle,
    NodeBudget,
    bound_combined,
    estimate_V,
    evaluate,
    interpolate,
    rho_for_real_singularity,
)


def f(points):
    return 1.0 / ((1.7 - points[..., 0]) * (2.2 - points[..., 1]))


def main() -> None:
    domain = Hyperrectangle.unit(2)

    # largest admissible radii come from the pole locations; stay inside
    adm_x = rho_for_real_singularity(1.7, domain.axes[0])
    adm_y = rho_for_real_singularity(2.2, domain.axes[1])
    radii = EllipseRadii((0.95 * adm_x, 0.95 * adm_y))
    print(f"admissible radii: ({adm_x:.4f}, {adm_y:.4f}); using 0.95 of each")

    # V = sup |f| over the product ellipse, from a boundary scan
    ellipse = GeneralizedBernsteinEllipse(domain, radii)
    v = estimate_V(f, ellipse, resolution=256)
    print(f"magnitude bound V = {v:.4f}")

    budget = NodeBudget((12, 10))
    report = bound_combined(BoundInputs(radii, budget, v))
    print()
    print(f"bound a        = {report.a_value:.6e}  (best axis order {report.sigma_star})")
    print(f"bound b        = {report.b_value:.6e}")
    print(f"combined bound = {report.combined:.6e}  -> winner {report.winner}")

    # now actually interpolate and measure
    interp = interpolate(f, domain, budget)
    xs = np.linspace(-1.0, 1.0, 401)
    probe = np.stack(np.meshgrid(xs, xs, indexing="ij"), axis=-1)
    measured = np.max(np.abs(evaluate(interp, probe) - f(probe)))
    print()
    print(f"measured sup error ~ {measured:.6e}")
    print(f"certificate holds:   {measured <= report.combined}")
    print(f"slack factor:        {report.combined / measured:.1f}x")


if __name__ == "__main__":
    main()
