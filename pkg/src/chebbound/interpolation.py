"""Tensorized Chebyshev interpolation on hyperrectangles.

Interpolants use the extrema grid ``x_k = cos(pi k / N)`` per axis and the
product basis ``T_j(x) = prod_i T_{j_i}(x_i)``.  Coefficients come from the
discrete orthogonality sums (trapezoid-weighted cosine transform); the
reference path evaluates those sums directly, with an optional DCT-I fast
path that must agree with it.

All objects are immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np
from numpy.typing import NDArray

from . import jsonio

__all__ = [
    "Hyperrectangle",
    "NodeBudget",
    "MultiIndex",
    "SampleTensor",
    "ChebyshevInterpolant",
    "chebyshev_T",
    "univariate_nodes",
    "map_affine",
    "map_affine_inv",
    "sample_on_grid",
    "compute_coefficients",
    "interpolate",
    "evaluate",
    "evaluate_grid",
    "evaluate_reference",
    "alias_index",
    "iter_multi_indices",
]

#: points this close to the reference boundary (in [-1,1] coordinates) are clamped
BOUNDARY_SLACK = 1e-12

COEFFICIENT_LAYOUT = "lex-last-fastest"


@dataclass(frozen=True)
class Hyperrectangle:
    """Axis-aligned box ``prod_i [lo_i, hi_i]`` with strictly positive widths."""

    axes: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        axes = tuple((float(lo), float(hi)) for lo, hi in self.axes)
        if not axes:
            raise ValueError("hyperrectangle needs at least one axis")
        for i, (lo, hi) in enumerate(axes):
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise ValueError(f"axis {i}: bounds must be finite, got [{lo}, {hi}]")
            if not lo < hi:
                raise ValueError(f"axis {i}: need lo < hi, got [{lo}, {hi}]")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def unit(cls, dimension: int) -> "Hyperrectangle":
        """The reference cube [-1, 1]^d."""
        return cls(((-1.0, 1.0),) * dimension)

    @property
    def dimension(self) -> int:
        return len(self.axes)

    @property
    def centers(self) -> NDArray[np.float64]:
        return np.array([(lo + hi) / 2.0 for lo, hi in self.axes])

    @property
    def halfwidths(self) -> NDArray[np.float64]:
        return np.array([(hi - lo) / 2.0 for lo, hi in self.axes])


@dataclass(frozen=True)
class NodeBudget:
    """Per-axis interpolation orders ``N_i >= 0``.

    The grid has ``N_i + 1`` nodes along axis ``i``; construction refuses
    budgets whose total grid size cannot be addressed as a tensor.
    """

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degrees = tuple(int(n) for n in self.degrees)
        if not degrees:
            raise ValueError("node budget needs at least one axis")
        if any(n != q or q < 0 for n, q in zip(self.degrees, degrees)):
            raise ValueError(f"degrees must be integers >= 0, got {self.degrees!r}")
        total = 1
        cap = np.iinfo(np.intp).max
        for n in degrees:
            total *= n + 1
            if total > cap:
                raise ValueError("total grid size exceeds addressable tensor size")
        object.__setattr__(self, "degrees", degrees)

    @property
    def dimension(self) -> int:
        return len(self.degrees)

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return tuple(n + 1 for n in self.degrees)

    @property
    def grid_points(self) -> int:
        return int(np.prod([n + 1 for n in self.degrees], dtype=object))


#: multi-indices are plain int tuples; membership in the index set J is j_i <= N_i
MultiIndex = tuple[int, ...]


def iter_multi_indices(budget: NodeBudget) -> Iterator[MultiIndex]:
    """Iterate the full index set J = {j : 0 <= j_i <= N_i} in lexicographic order."""
    for j in np.ndindex(*budget.grid_shape):
        yield tuple(int(v) for v in j)


def chebyshev_T(k: int, x):
    """Chebyshev polynomial of the first kind via the three-term recurrence.

    Parameters
    ----------
    k : int
        Degree, >= 0.
    x : scalar or array_like
        Evaluation points; real or complex.

    Returns
    -------
    Value(s) of T_k(x), matching the shape of ``x``.
    """
    if k < 0:
        raise ValueError("degree must be >= 0")
    x = np.asarray(x)
    t_prev = np.ones_like(x)
    if k == 0:
        return t_prev[()] if t_prev.ndim == 0 else t_prev
    t_cur = x.copy()
    for _ in range(k - 1):
        t_prev, t_cur = t_cur, 2 * x * t_cur - t_prev
    return t_cur[()] if t_cur.ndim == 0 else t_cur


def univariate_nodes(n: int) -> NDArray[np.float64]:
    """Extrema nodes cos(pi k / n), k = 0..n, descending from 1 to -1.

    A zero-order axis degenerates to the single node 1.0.
    """
    if n < 0:
        raise ValueError("order must be >= 0")
    if n == 0:
        return np.array([1.0])
    return np.cos(np.pi * np.arange(n + 1) / n)


def map_affine(domain: Hyperrectangle, u) -> NDArray[np.float64]:
    """Map reference coordinates in [-1, 1]^d onto the domain.

    Accepts a single point of shape ``(d,)`` or a batch ``(..., d)``.
    """
    u = np.asarray(u, dtype=float)
    if u.shape[-1:] != (domain.dimension,):
        raise ValueError(
            f"expected last axis of size {domain.dimension}, got shape {u.shape}"
        )
    if np.any(np.abs(u) > 1.0 + BOUNDARY_SLACK):
        raise ValueError("reference coordinates fall outside [-1, 1]")
    u = np.clip(u, -1.0, 1.0)
    return domain.centers + domain.halfwidths * u


def map_affine_inv(domain: Hyperrectangle, x) -> NDArray[np.float64]:
    """Map domain points back to [-1, 1]^d, clamping 1e-12 boundary spill."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1:] != (domain.dimension,):
        raise ValueError(
            f"expected last axis of size {domain.dimension}, got shape {x.shape}"
        )
    u = (x - domain.centers) / domain.halfwidths
    if np.any(np.abs(u) > 1.0 + BOUNDARY_SLACK):
        bad = np.unravel_index(np.argmax(np.abs(u)), u.shape)
        raise ValueError(f"point outside domain at index {bad[:-1]}: {x[bad[:-1]]}")
    return np.clip(u, -1.0, 1.0)


@dataclass(frozen=True, eq=False)
class SampleTensor:
    """Function values on the full tensor grid, shape ``(N_1+1, ..., N_D+1)``."""

    domain: Hyperrectangle
    budget: NodeBudget
    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.domain.dimension != self.budget.dimension:
            raise ValueError("domain and budget dimensions differ")
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.budget.grid_shape:
            raise ValueError(
                f"sample tensor shape {values.shape} != grid shape {self.budget.grid_shape}"
            )
        values = values.copy()
        values.flags.writeable = False
        object.__setattr__(self, "values", values)


def grid_axes(domain: Hyperrectangle, budget: NodeBudget) -> list[NDArray[np.float64]]:
    """Per-axis node coordinates in the domain."""
    centers, halfs = domain.centers, domain.halfwidths
    return [
        centers[i] + halfs[i] * univariate_nodes(n)
        for i, n in enumerate(budget.degrees)
    ]


def grid_points(domain: Hyperrectangle, budget: NodeBudget) -> NDArray[np.float64]:
    """All grid nodes as an array of shape ``grid_shape + (d,)``, lexicographic."""
    axes = grid_axes(domain, budget)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1)


def sample_on_grid(
    f: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    domain: Hyperrectangle,
    budget: NodeBudget,
) -> SampleTensor:
    """Evaluate ``f`` on the full tensor grid.

    ``f`` receives an array of points with the coordinate on the last axis
    and must return matching values.  Non-finite samples are rejected with
    the offending node named.
    """
    if domain.dimension != budget.dimension:
        raise ValueError("domain and budget dimensions differ")
    pts = grid_points(domain, budget)
    values = np.asarray(f(pts), dtype=float)
    if values.shape != budget.grid_shape:
        raise ValueError(
            f"function returned shape {values.shape}, expected {budget.grid_shape}"
        )
    if not np.all(np.isfinite(values)):
        bad = tuple(int(v) for v in np.argwhere(~np.isfinite(values))[0])
        raise ValueError(
            f"non-finite sample at node index {bad}, coordinates {pts[bad]}"
        )
    return SampleTensor(domain, budget, values)


def _axis_transform_matrix(n: int) -> NDArray[np.float64]:
    """The order-n coefficient transform: C[j, k] = pref(j) * w(k) * cos(pi j k / n).

    ``w`` halves the first and last summand; ``pref`` is 2/n for interior j
    and 1/n at j in {0, n}.  The cosine argument is reduced with the exact
    integer period 2n before calling cos, so entries are accurate to ~1 ulp
    even for large j*k.
    """
    j = np.arange(n + 1)
    jk = np.outer(j, j) % (2 * n)
    mat = np.cos(np.pi * jk / n)
    weights = np.ones(n + 1)
    weights[0] = weights[-1] = 0.5
    pref = np.full(n + 1, 2.0 / n)
    pref[0] = pref[-1] = 1.0 / n
    return pref[:, None] * mat * weights[None, :]


def compute_coefficients(samples: SampleTensor, method: str = "direct") -> NDArray[np.float64]:
    """Coefficient tensor of the interpolant through ``samples``.

    Parameters
    ----------
    samples : SampleTensor
    method : {"direct", "dct"}
        "direct" evaluates the trapezoid-weighted cosine sums as written
        (the reference path).  "dct" routes through a type-I DCT per axis
        and must match the reference to 1e-12 relative.

    Notes
    -----
    Axes with ``N_i = 0`` carry a single sample and stay untouched: the
    interpolant is constant in those variables.  The strict transform is
    only defined for ``N_i >= 1``.
    """
    if method == "direct":
        coeffs = samples.values
        for axis, n in enumerate(samples.budget.degrees):
            if n == 0:
                continue
            mat = _axis_transform_matrix(n)
            coeffs = np.moveaxis(np.tensordot(mat, coeffs, axes=(1, axis)), 0, axis)
        return np.ascontiguousarray(coeffs)
    if method == "dct":
        return _compute_coefficients_dct(samples)
    raise ValueError(f"unknown method {method!r}")


def _compute_coefficients_dct(samples: SampleTensor) -> NDArray[np.float64]:
    # DCT-I computes y_j = f_0 + (-1)^j f_n + 2 sum_{0<k<n} f_k cos(pi j k/n),
    # i.e. twice the halved-endpoint sum; rescale per axis to match pref(j).
    from scipy import fft as sp_fft

    coeffs = samples.values.astype(float)
    for axis, n in enumerate(samples.budget.degrees):
        if n == 0:
            continue
        coeffs = sp_fft.dct(coeffs, type=1, axis=axis)
        scale = np.full(n + 1, 1.0 / n)
        scale[0] = scale[-1] = 0.5 / n
        shape = [1] * coeffs.ndim
        shape[axis] = n + 1
        coeffs = coeffs * scale.reshape(shape)
    return np.ascontiguousarray(coeffs)


@dataclass(frozen=True, eq=False)
class ChebyshevInterpolant:
    """Immutable interpolant ``sum_j c_j T_j`` on a hyperrectangle."""

    domain: Hyperrectangle
    budget: NodeBudget
    coefficients: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.domain.dimension != self.budget.dimension:
            raise ValueError("domain and budget dimensions differ")
        coeffs = np.asarray(self.coefficients, dtype=float)
        if coeffs.shape != self.budget.grid_shape:
            raise ValueError(
                f"coefficient shape {coeffs.shape} != grid shape {self.budget.grid_shape}"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs = coeffs.copy()
        coeffs.flags.writeable = False
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, x):
        return evaluate(self, x)

    def to_json(self) -> str:
        """Serialize to a JSON document; floats keep 17 significant digits."""
        return jsonio.dumps(
            {
                "domain": [list(ax) for ax in self.domain.axes],
                "degrees": list(self.budget.degrees),
                "layout": COEFFICIENT_LAYOUT,
                "coefficients": [float(c) for c in self.coefficients.ravel(order="C")],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ChebyshevInterpolant":
        doc = json.loads(text)
        try:
            domain = Hyperrectangle(tuple((lo, hi) for lo, hi in doc["domain"]))
            budget = NodeBudget(tuple(doc["degrees"]))
            layout = doc["layout"]
            flat = np.asarray(doc["coefficients"], dtype=float)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed interpolant document: {exc}") from exc
        if layout != COEFFICIENT_LAYOUT:
            raise ValueError(f"unsupported coefficient layout {layout!r}")
        if flat.size != budget.grid_points:
            raise ValueError(
                f"expected {budget.grid_points} coefficients, got {flat.size}"
            )
        return cls(domain, budget, flat.reshape(budget.grid_shape, order="C"))


def interpolate(
    f: Callable[[NDArray[np.float64]], NDArray[np.float64]],
    domain: Hyperrectangle,
    budget: NodeBudget,
    method: str = "direct",
) -> ChebyshevInterpolant:
    """Sample ``f`` on the tensor grid and build its interpolant."""
    samples = sample_on_grid(f, domain, budget)
    return ChebyshevInterpolant(domain, budget, compute_coefficients(samples, method))


def _clenshaw_axis(coeffs: NDArray[np.float64], u: NDArray[np.float64]) -> NDArray[np.float64]:
    # Contract the trailing axis of `coeffs` with T_j(u); `u` broadcasts
    # against the leading batch axes.
    n = coeffs.shape[-1]
    if n == 1:
        return coeffs[..., 0] + 0.0 * u
    b1 = coeffs[..., -1] + 0.0 * u
    b2 = np.zeros_like(b1)
    for j in range(n - 2, 0, -1):
        b1, b2 = coeffs[..., j] + 2.0 * u * b1 - b2, b1
    return coeffs[..., 0] + u * b1 - b2


def evaluate(interpolant: ChebyshevInterpolant, x):
    """Evaluate at one point ``(d,)`` or a batch ``(..., d)`` inside the domain.

    Uses a Clenshaw recurrence along each axis.  Points within 1e-12 of the
    domain boundary are clamped onto it; anything farther out raises.
    """
    u = map_affine_inv(interpolant.domain, x)
    single = u.ndim == 1
    flat = u.reshape(-1, interpolant.domain.dimension)
    vals = np.broadcast_to(
        interpolant.coefficients, (flat.shape[0],) + interpolant.coefficients.shape
    )
    for axis in range(interpolant.domain.dimension - 1, -1, -1):
        u_axis = flat[:, axis].reshape((-1,) + (1,) * (vals.ndim - 2))
        vals = _clenshaw_axis(vals, u_axis)
    if single:
        return float(vals[0])
    return vals.reshape(np.asarray(x).shape[:-1])


def evaluate_grid(
    interpolant: ChebyshevInterpolant, axes_points: Sequence[np.ndarray]
) -> NDArray[np.float64]:
    """Evaluate on the product grid of the given per-axis domain coordinates.

    Much cheaper than evaluating the scattered product points one by one:
    the coefficient tensor is contracted with one Chebyshev-Vandermonde
    matrix per axis.
    """
    d = interpolant.domain.dimension
    if len(axes_points) != d:
        raise ValueError(f"expected {d} coordinate axes, got {len(axes_points)}")
    vals = interpolant.coefficients
    centers, halfs = interpolant.domain.centers, interpolant.domain.halfwidths
    for axis in range(d):
        pts = np.asarray(axes_points[axis], dtype=float)
        u = (pts - centers[axis]) / halfs[axis]
        if np.any(np.abs(u) > 1.0 + BOUNDARY_SLACK):
            raise ValueError(f"axis {axis}: evaluation points outside domain")
        u = np.clip(u, -1.0, 1.0)
        n = interpolant.budget.degrees[axis]
        vander = np.empty((len(u), n + 1))
        vander[:, 0] = 1.0
        if n >= 1:
            vander[:, 1] = u
        for j in range(2, n + 1):
            vander[:, j] = 2.0 * u * vander[:, j - 1] - vander[:, j - 2]
        # contract leading axis, cycle it to the back; after d steps the
        # axis order is restored
        vals = np.tensordot(vals, vander, axes=([0], [1]))
    return vals


def evaluate_reference(interpolant: ChebyshevInterpolant, x) -> float:
    """Naive basis-product summation, kept as the correctness anchor for evaluate()."""
    u = map_affine_inv(interpolant.domain, np.asarray(x, dtype=float))
    if u.ndim != 1:
        raise ValueError("reference evaluation takes a single point")
    total = 0.0
    for j in iter_multi_indices(interpolant.budget):
        term = float(interpolant.coefficients[j])
        for i, ji in enumerate(j):
            term *= float(chebyshev_T(ji, u[i]))
        total += term
    return total


def alias_index(k: int, n: int) -> int:
    """Index to which T_k aliases on the order-n extrema grid.

    m(k, n) = |((k + n - 1) mod 2n) - (n - 1)|, so T_k and T_{m(k,n)} agree
    at every grid node.
    """
    if n < 1:
        raise ValueError("grid order must be >= 1")
    if k < 0:
        raise ValueError("degree must be >= 0")
    return abs((k + n - 1) % (2 * n) - (n - 1))
