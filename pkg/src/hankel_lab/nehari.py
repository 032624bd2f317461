"""Lower bounds for the Nehari constants of the polytorus.

C_d is the smallest constant such that every symbol with a bounded Hankel
operator admits a bounded completion psi (analytic projection equal to
the symbol) with ||psi||_inf <= C_d ||H_phi||. Testing the pairing of an
H^1 function f against a symbol phi gives the computable lower bound

    C_d >= |<f, phi>| / (||H_phi|| * ||f||_{H^1}),

with the pairing taken as the coefficient sum, which is exact for
polynomials. Two closed-form witness families are provided for even d,
together with a one-parameter search that tunes the test function for the
quadratic witness.

The same pairing bound drives the divergence diagnostics: the unit-norm
symbol assembled from growing blocks of normalized pair sums in fresh
variables (cex_truncation) has dual ratios against its own blocks that
blow up for every q < 2, which rules out any completion in L^p for p > 2.

For the basic symbol z1 + z2 the optimal completion is the bilateral
series with coefficients (-1)^k/(1-2k) on the frequencies (1-k, k); its
modulus is pi/2 almost everywhere, which psi_sup_estimate corroborates on
grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .hankel import NormEstimate, operator_norm
from .quadrature import QuadratureSpec, default_spec, h1_norm_2hom, hp_norm, hq_norm_basic
from .symbols import Symbol


@dataclass(frozen=True)
class BoundWitness:
    """Everything needed to recompute a dual-pairing bound."""

    f: Symbol
    phi: Symbol
    pairing: complex
    h1: NormEstimate
    hankel_norm: NormEstimate


@dataclass(frozen=True)
class BoundReport:
    """A lower bound for the Nehari constant in dimension d.

    method is one of "dual-pairing", "quadratic-witness", "pairsum-witness"
    or "search"; dual-pairing and search reports carry their witness.
    """

    d: int
    bound_value: float
    method: str
    witness: BoundWitness | None = None


def pairing(f: Symbol, phi: Symbol) -> complex:
    """Coefficient pairing sum_alpha fhat(alpha) * conj(phihat(alpha))."""
    if f.dim != phi.dim:
        raise DomainError(f"dimension mismatch: {f.dim} vs {phi.dim}")
    return sum(c * phi.coeff(a).conjugate() for a, c in f.terms())


def dual_bound(f: Symbol, phi: Symbol, spec: QuadratureSpec | None = None) -> BoundReport:
    """Lower bound |<f, phi>| / (||H_phi|| * ||f||_{H^1}).

    The Hankel norm is computed from the matrix, not assumed minimal, so
    the bound is valid for arbitrary polynomial phi.
    """
    if f.is_zero or phi.is_zero:
        raise DomainError("dual_bound requires nonzero symbols")
    pair = pairing(f, phi)
    hankel = operator_norm(phi)
    h1 = hp_norm(f, 1, spec if spec is not None else default_spec(f.dim))
    value = abs(pair) / (hankel.value * h1.value)
    witness = BoundWitness(f, phi, pair, h1, hankel)
    return BoundReport(f.dim, value, "dual-pairing", witness)


def _require_even(d):
    if not isinstance(d, int) or isinstance(d, bool) or d < 2 or d % 2:
        raise DomainError(f"bound is stated for even d >= 2, got {d!r}")


def quadratic_witness_lower(d: int) -> BoundReport:
    """C_d >= (5 pi / (pi + 6 sqrt(3)))^(d/2) for even d.

    The base case is the dual bound with f = z1^2 + z1 z2 + z2^2 and
    phi = z1^2 + z1 z2 / 2 + z2^2; products of translated copies multiply
    the bound across pairs of variables.
    """
    _require_even(d)
    base = 5.0 * math.pi / (math.pi + 6.0 * math.sqrt(3.0))
    return BoundReport(d, base ** (d / 2), "quadratic-witness")


def pairsum_witness_lower(d: int) -> BoundReport:
    """C_d >= (pi^2 / 8)^(d/4) for even d, from the symbol z1 + z2."""
    _require_even(d)
    return BoundReport(d, (math.pi**2 / 8.0) ** (d / 4), "pairsum-witness")


# -- tuned quadratic search --------------------------------------------------

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _quadratic_symbol(t: float) -> Symbol:
    return Symbol(2, [((2, 0), 1.0), ((1, 1), t), ((0, 2), 1.0)])


def search_c2(a: float, c_range=(0.0, 2.0)):
    """Maximize the dual bound for phi = z1^2 + a z1 z2 + z2^2 over test
    functions f = z1^2 + c z1 z2 + z2^2.

    Requires 0 <= a <= 1/2 so the Hankel norm equals the H^2 norm. A
    101-point scan locates the maximum (and insists it is interior to
    c_range), then golden-section search refines c to 1e-6. Returns
    (best c, BoundReport).
    """
    if not 0.0 <= a <= 0.5:
        raise DomainError(
            f"search requires 0 <= a <= 1/2 (minimal-norm regime), got {a}"
        )
    lo, hi = float(c_range[0]), float(c_range[1])
    if not lo < hi:
        raise DomainError(f"empty search interval {c_range}")
    phi = _quadratic_symbol(a)
    hankel = operator_norm(phi)

    def bound(c):
        f = _quadratic_symbol(c)
        return abs(2.0 + a * c) / (hankel.value * h1_norm_2hom(f).value)

    grid = np.linspace(lo, hi, 101)
    values = [bound(c) for c in grid]
    peak = int(np.argmax(values))
    if peak in (0, len(grid) - 1):
        raise DomainError(
            f"grid argmax at the boundary of {c_range}; widen the interval"
        )
    left, right = grid[peak - 1], grid[peak + 1]
    x1 = right - _GOLDEN * (right - left)
    x2 = left + _GOLDEN * (right - left)
    f1, f2 = bound(x1), bound(x2)
    while right - left > 1e-6:
        if f1 < f2:
            left, x1, f1 = x1, x2, f2
            x2 = left + _GOLDEN * (right - left)
            f2 = bound(x2)
        else:
            right, x2, f2 = x2, x1, f1
            x1 = right - _GOLDEN * (right - left)
            f1 = bound(x1)
    best_c = float(0.5 * (left + right))
    f_best = _quadratic_symbol(best_c)
    h1 = h1_norm_2hom(f_best)
    pair = pairing(f_best, phi)
    report = BoundReport(
        2,
        abs(pair) / (hankel.value * h1.value),
        "search",
        BoundWitness(f_best, phi, pair, h1, hankel),
    )
    return best_c, report


# -- divergent dual family ----------------------------------------------------

_SQRT6_OVER_PI = math.sqrt(6.0) / math.pi


def cex_truncation(K: int) -> Symbol:
    """First K blocks of the unit-norm divergent-dual symbol.

    Block k is (1/k) times the product of k normalized pair sums
    (z_{2j-1} + z_{2j})/sqrt(2) in fresh variables, and the whole sum is
    scaled by sqrt(6)/pi so the full series has H^2 norm 1. The
    truncation lives in dimension K(K+1) and has H^2 norm
    sqrt(6)/pi * sqrt(sum_{k<=K} k^-2).
    """
    if not isinstance(K, int) or isinstance(K, bool) or K < 1:
        raise DomainError(f"truncation order must be an integer >= 1, got {K!r}")
    dim = K * (K + 1)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    total = Symbol.zero(dim)
    for k in range(1, K + 1):
        block = Symbol.one(dim)
        for j in range((k - 1) * k // 2 + 1, k * (k + 1) // 2 + 1):
            pair = Symbol.variable(dim, 2 * j - 2) + Symbol.variable(dim, 2 * j - 1)
            block = block * (pair * inv_sqrt2)
        total = total + block * (1.0 / k)
    return total * _SQRT6_OVER_PI


def cex_ratio(k: int, q: float) -> float:
    """Dual ratio of block k against the full symbol, in closed form.

    Equals sqrt(6)/pi * (1/k) * r(q)^(-k) with r(q) = hq_norm_basic(q),
    because the H^q norm of a product in separate variables factors.
    Unbounded in k for every q < 2. At q = 2 the ratio degenerates to
    sqrt(6)/pi * (1/k), which tends to 0, so q = 2 is rejected along with
    everything above it.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise DomainError(f"block index must be an integer >= 1, got {k!r}")
    if not 1.0 <= q < 2.0:
        raise DomainError(f"the dual ratio is defined for 1 <= q < 2, got {q}")
    r = hq_norm_basic(q).value
    return _SQRT6_OVER_PI * (1.0 / k) * r ** (-k)


# -- the optimal completion of z1 + z2 ---------------------------------------


@dataclass(frozen=True)
class PsiSeries:
    """Symmetric truncation of the bilateral completion series.

    Keeps the terms (-1)^k/(1-2k) * z1^(1-k) * z2^k for |k| <= truncation.
    The k=0 and k=1 coefficients are both 1, so the analytic projection
    is z1 + z2 for every truncation.
    """

    truncation: int

    def __post_init__(self):
        if self.truncation < 1:
            raise DomainError("truncation must be >= 1")

    @staticmethod
    def coefficient(k: int) -> float:
        return (-1.0) ** k / (1.0 - 2.0 * k)


def psi_evaluate(ps: PsiSeries, theta1: float, theta2: float) -> complex:
    """Value of the truncated series at (e^{i theta1}, e^{i theta2})."""
    ks = np.arange(-ps.truncation, ps.truncation + 1)
    coefs = ((-1.0) ** ks) / (1.0 - 2.0 * ks)
    return complex(np.sum(coefs * np.exp(1j * ((1 - ks) * theta1 + ks * theta2))))


def psi_projection(ps: PsiSeries) -> Symbol:
    """Analytic part of the truncated series (both exponents >= 0)."""
    terms = []
    for k in range(-ps.truncation, ps.truncation + 1):
        if 1 - k >= 0 and k >= 0:
            terms.append(((1 - k, k), PsiSeries.coefficient(k)))
    return Symbol(2, terms)


def psi_sup_estimate(K: int, grid_n: int = 512) -> NormEstimate:
    """Grid maximum of the truncated completion series modulus.

    The series is 1-homogeneous, so its modulus depends only on the angle
    difference and the max over the full grid_n x grid_n torus grid equals
    the max over the grid_n difference angles, which is what gets
    evaluated. The value is a lower estimate of the true sup. The partial
    sums converge slowly: near the phase jump of the limit function the
    deviation has an empirical envelope of about grid_n / (2 pi K), which
    is reported as the error bound (an observed scale, not a certified
    bound).
    """
    if K < 1:
        raise DomainError("truncation must be >= 1")
    if grid_n < 16:
        raise DomainError("grid must have at least 16 points")
    ks = np.arange(-K, K + 1)
    coefs = ((-1.0) ** ks) / (1.0 - 2.0 * ks)
    u = 2.0 * np.pi * np.arange(grid_n) / grid_n
    values = np.zeros(grid_n, dtype=complex)
    for start in range(0, len(ks), 4096):
        chunk = slice(start, start + 4096)
        values += np.exp(1j * np.outer(u, ks[chunk])) @ coefs[chunk]
    envelope = grid_n / (2.0 * math.pi * K)
    return NormEstimate(
        float(np.abs(values).max()),
        "grid-quadrature",
        envelope,
        f"symmetric partial sum K={K} on the {grid_n}-point difference grid "
        f"(equals the {grid_n}x{grid_n} torus grid max); lower estimate, "
        "error bound is the empirical near-jump envelope N/(2 pi K)",
    )
