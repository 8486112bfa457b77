"""Range kernels: raised cosines, their Gaussian-matching scaling, and the
even-polynomial (Taylor) baseline.

A raised cosine of degree N is ``phi(s) = cos(omega*s)**N``.  Expanding the
power through the binomial theorem writes it as a symmetric sum of N+1
complex exponentials, which is what lets the bilateral engine turn the range
weighting into plain spatial averages.  Scaling the argument by
``1/(rho*sqrt(N))`` makes the family converge to a Gaussian of standard
deviation sigma_r as N grows, where ``rho = gamma * sigma_r`` and
``gamma = pi / (2*T)`` for intensities bounded by T.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

# Measured minimum degrees that keep the scaled raised cosine a faithful
# stand-in for a Gaussian of the given sigma on an 8-bit range (T = 255).
# The ceiling estimate degree_estimate() is safe but pessimistic for small
# sigma; these values are the cheaper empirical choices.
DEGREE_TABLE_8BIT: dict[float, int] = {
    200.0: 1,
    150.0: 2,
    100.0: 3,
    80.0: 4,
    60.0: 5,
    50.0: 7,
    40.0: 9,
}

DEFAULT_WIDE_DEGREE = 5

# Past this degree the exact binomial path would overflow float64, so the
# coefficients switch to a log-gamma evaluation.
_EXACT_BINOMIAL_LIMIT = 1000


@dataclass(frozen=True)
class TrigKernel:
    """Raised-cosine range kernel as a coefficient/frequency list.

    ``coeffs[n] = 2**-N * C(N, n)`` and ``freqs[n] = (2n - N) * omega``;
    evaluating ``sum_n coeffs[n] * cos(freqs[n] * s)`` reproduces
    ``cos(omega*s)**N`` exactly.  When ``rho*sqrt(N) >= 1`` the argument
    stays within a half period over ``[-T, T]``, so the kernel is
    nonnegative and decays monotonically there.
    """

    T: float
    gamma: float
    rho: float
    N: int
    omega: float
    coeffs: np.ndarray = field(repr=False)
    freqs: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class PolyKernel:
    """Even polynomial range kernel (truncated Taylor series of a Gaussian)."""

    sigma: float
    coeffs_even: np.ndarray = field(repr=False)

    @property
    def terms(self) -> int:
        return int(self.coeffs_even.size)


def degree_estimate(sigma_r: float, T: float) -> int:
    """Ceiling bound ceil((gamma*sigma_r)**-2) on the degree needed for a
    narrow Gaussian target."""
    if sigma_r <= 0.0 or T <= 0.0:
        raise ParameterError("sigma_r and T must be positive")
    gamma = math.pi / (2.0 * T)
    return math.ceil((gamma * sigma_r) ** -2)


def select_degree(
    sigma_r: float,
    T: float,
    lookup: dict[float, int] | None = None,
    default_degree: int = DEFAULT_WIDE_DEGREE,
) -> int:
    """Pick the raised-cosine degree for a target Gaussian sigma_r.

    A lookup table, when given and hit exactly, wins.  Otherwise the ceiling
    estimate applies for narrow kernels (``gamma*sigma_r < 1``); for wide
    kernels any modest degree suffices and ``default_degree`` is returned.
    """
    if sigma_r <= 0.0 or T <= 0.0:
        raise ParameterError("sigma_r and T must be positive")
    if lookup is not None and sigma_r in lookup:
        return lookup[sigma_r]
    gamma = math.pi / (2.0 * T)
    if gamma * sigma_r < 1.0:
        return degree_estimate(sigma_r, T)
    return default_degree


def _binomial_coeffs(n_degree: int) -> np.ndarray:
    if n_degree <= _EXACT_BINOMIAL_LIMIT:
        scale = 2.0 ** (-n_degree)
        return np.array(
            [float(math.comb(n_degree, n)) * scale for n in range(n_degree + 1)]
        )
    log_scale = -n_degree * math.log(2.0)
    lg_top = math.lgamma(n_degree + 1)
    return np.array(
        [
            math.exp(
                lg_top - math.lgamma(n + 1) - math.lgamma(n_degree - n + 1) + log_scale
            )
            for n in range(n_degree + 1)
        ]
    )


def make_trig_kernel(
    sigma_r: float,
    T: float = 255.0,
    degree: int | None = None,
    lookup: dict[float, int] | None = None,
) -> TrigKernel:
    """Construct the scaled raised cosine approximating a Gaussian of
    standard deviation ``sigma_r`` over ``[-T, T]``.

    When ``degree`` is omitted it is chosen by ``select_degree``; the 8-bit
    lookup table is consulted automatically when T is 255.  ``degree=0``
    gives the constant kernel (pure spatial filtering).
    """
    if sigma_r <= 0.0 or T <= 0.0:
        raise ParameterError("sigma_r and T must be positive")
    gamma = math.pi / (2.0 * T)
    rho = gamma * sigma_r
    if degree is None:
        if lookup is None and T == 255.0:
            lookup = DEGREE_TABLE_8BIT
        degree = select_degree(sigma_r, T, lookup=lookup)
    if degree < 0:
        raise ParameterError(f"degree must be >= 0, got {degree}")
    omega = gamma / (rho * math.sqrt(degree)) if degree > 0 else 0.0
    n = np.arange(degree + 1, dtype=np.float64)
    return TrigKernel(
        T=T,
        gamma=gamma,
        rho=rho,
        N=degree,
        omega=omega,
        coeffs=_binomial_coeffs(degree),
        freqs=(2.0 * n - degree) * omega,
    )


def trig_eval(k: TrigKernel, s):
    """Evaluate the kernel as its cosine sum: sum_n coeffs[n]*cos(freqs[n]*s).

    Accepts scalars or arrays; by the binomial identity the sum equals
    ``cos(omega*s)**N``.
    """
    arr = np.asarray(s, dtype=np.float64)
    vals = np.cos(arr[..., None] * k.freqs) @ k.coeffs
    if arr.ndim == 0:
        return float(vals)
    return vals


def gaussian_eval(sigma: float, s):
    """Gaussian range kernel exp(-s^2 / 2 sigma^2)."""
    if sigma <= 0.0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    arr = np.asarray(s, dtype=np.float64)
    vals = np.exp(-(arr * arr) / (2.0 * sigma * sigma))
    if arr.ndim == 0:
        return float(vals)
    return vals


def make_taylor_kernel(sigma: float, terms: int) -> PolyKernel:
    """Truncated Taylor series of the Gaussian: coefficient of s^(2k) is
    (-1)^k / (k! (2 sigma^2)^k)."""
    if sigma <= 0.0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if terms < 1:
        raise ParameterError(f"terms must be >= 1, got {terms}")
    denom = 2.0 * sigma * sigma
    coeffs = np.array(
        [(-1.0) ** k / (math.factorial(k) * denom**k) for k in range(terms)]
    )
    return PolyKernel(sigma=sigma, coeffs_even=coeffs)


def poly_eval(p: PolyKernel, s):
    """Evaluate an even polynomial kernel (Horner in s^2)."""
    arr = np.asarray(s, dtype=np.float64)
    s2 = arr * arr
    vals = np.full_like(s2, p.coeffs_even[-1])
    for b in p.coeffs_even[-2::-1]:
        vals = vals * s2 + b
    if arr.ndim == 0:
        return float(vals)
    return vals


def _eval_on(kernel_eval, grid: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(kernel_eval(grid), dtype=np.float64)
        if vals.shape == grid.shape:
            return vals
    except (TypeError, ValueError):
        pass
    return np.array([float(kernel_eval(s)) for s in grid])


def sup_error(kernel_eval, sigma: float, T: float, grid_points: int = 10001) -> float:
    """Max deviation from the target Gaussian over a uniform grid on [-T, T]."""
    if grid_points < 2:
        raise ParameterError(f"grid_points must be >= 2, got {grid_points}")
    grid = np.linspace(-T, T, grid_points)
    return float(np.max(np.abs(_eval_on(kernel_eval, grid) - gaussian_eval(sigma, grid))))


def kernel_table(
    sigma: float,
    T: float = 255.0,
    degree: int | None = None,
    terms: int | None = None,
    points: int = 1001,
    family_degrees: tuple[int, ...] = (),
) -> tuple[list[str], np.ndarray]:
    """Sampled kernel curves for plotting.

    Returns a header list and a column-stacked array.  The base columns are
    s, the scaled raised cosine, the target Gaussian, and the matched Taylor
    polynomial; ``family_degrees`` adds one unscaled ``cos(gamma*s)**N``
    column per requested degree.
    """
    k = make_trig_kernel(sigma, T, degree=degree)
    if terms is None:
        terms = k.N // 2 + 1
    p = make_taylor_kernel(sigma, terms)
    s = np.linspace(-T, T, points)
    header = ["s"]
    cols = [s]
    gamma = math.pi / (2.0 * T)
    for n in family_degrees:
        header.append(f"cos_pow_{n}")
        cols.append(np.cos(gamma * s) ** n)
    header += ["trig_value", "gaussian_value", "taylor_value"]
    cols += [trig_eval(k, s), gaussian_eval(sigma, s), poly_eval(p, s)]
    return header, np.column_stack(cols)


def export_kernel_csv(
    fileobj,
    sigma: float,
    T: float = 255.0,
    degree: int | None = None,
    terms: int | None = None,
    points: int = 1001,
    family_degrees: tuple[int, ...] = (),
) -> None:
    """Write kernel curves as CSV (header row, '.' decimals)."""
    header, table = kernel_table(sigma, T, degree, terms, points, family_degrees)
    writer = csv.writer(fileobj)
    writer.writerow(header)
    for row in table:
        writer.writerow([repr(float(v)) for v in row])
