"""Concrete shape-invariant families.

Two hierarchies are provided:

* ``trig_pt`` -- trigonometric Poschl-Teller on (0, pi), increasing kind:
  superpotential w_n(x) = -(n+1/2) cot x, factorization energy mu_n = n+1/2,
  potential V_n = (n+1/2)(n-1/2)/sin^2 x, ground state ~ sin^{n+1/2} x.
* ``hyp_pt`` -- hyperbolic Poschl-Teller on R (truncated to [-20, 20]),
  decreasing kind: w_n(x) = (n-1/2) tanh x, mu_n = n-1/2,
  V_n = -(n+1/2)(n-1/2)/cosh^2 x, ground state ~ cosh^{-(n-1/2)} x,
  exactly n bound states for the n-th member.

Raising operators map the two families into themselves with a fixed envelope
times a polynomial in cos x (resp. tanh x), so every ladder state has a
closed form; eigenfunctions are evaluated from it exactly rather than by
repeated finite differencing.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial import Polynomial

from .grid import DECAY_TRUNCATION, DIRICHLET, Grid, GridFunction, normalize_values

INCREASING = "increasing"
DECREASING = "decreasing"

MODEL_IDS = ("trig_pt", "hyp_pt")


@dataclass(frozen=True)
class Model:
    """A shape-invariant family: domain, superpotential, factorization
    energies and index bookkeeping.

    ``mass_shift`` supports the null-factorization-energy construction: the
    effective factorization energy is mu_n^2 = mu_base(n)^2 - mass_shift,
    which shifts every spectrum by the same constant and leaves the factor
    operators and eigenfunctions untouched.
    """

    model_id: str
    kind: str
    default_grid: Grid
    n_min: int
    w_fn: callable = field(repr=False)
    w_prime_fn: callable = field(repr=False)
    mu_base_fn: callable = field(repr=False)
    ladder_fn: callable = field(repr=False)
    singular_points: tuple = ()
    mass_shift: float = 0.0

    @property
    def energy_sign(self):
        """Sign in front of mu_n^2 in H_n = a+ a- + sign * mu_n^2."""
        return 1.0 if self.kind == INCREASING else -1.0

    def check_n(self, n):
        if n < self.n_min:
            raise ValueError(
                f"index n={n} outside hierarchy range of {self.model_id}")

    def mu(self, n):
        """Factorization energy (nonnegative root), including any shift."""
        self.check_n(n)
        mu2 = self.mu_base_fn(n) ** 2 - self.mass_shift
        if mu2 < -1e-12:
            raise ValueError("imaginary shifted mass")
        return math.sqrt(max(mu2, 0.0))

    def k_limit(self, n):
        """Largest valid excitation k for member n (None if unbounded)."""
        self.check_n(n)
        return None if self.kind == INCREASING else n - 1

    def check_state(self, n, k):
        self.check_n(n)
        limit = self.k_limit(n)
        if k < 0 or (limit is not None and k > limit):
            raise ValueError(
                f"state (n={n}, k={k}) outside discrete spectrum")

    def w(self, n, x):
        self.check_n(n)
        return self.w_fn(n, np.asarray(x, dtype=float))

    def w_prime(self, n, x):
        self.check_n(n)
        return self.w_prime_fn(n, np.asarray(x, dtype=float))


def _trig_ladder(n, k, x):
    # Applying a raising operator to sin^a P(cos) gives
    # sin^{a-1} [-(a + j + 1/2) c P + (1 - c^2) P'].
    alpha = n + k + 0.5
    poly = Polynomial([1.0])
    for j in range(n + k - 1, n - 1, -1):
        poly = (Polynomial([0.0, -(alpha + j + 0.5)]) * poly
                + Polynomial([1.0, 0.0, -1.0]) * poly.deriv())
        alpha -= 1.0
    return np.sin(x) ** (n + 0.5) * poly(np.cos(x))


def _hyp_ladder(n, k, x):
    # Raising cosh^{-b} Q(tanh) gives cosh^{-b} [(b + j - 1/2) t Q
    # - (1 - t^2) Q']; the envelope exponent stays fixed.
    beta = n - k - 0.5
    poly = Polynomial([1.0])
    for j in range(n - k + 1, n + 1):
        poly = (Polynomial([0.0, beta + j - 0.5]) * poly
                - Polynomial([1.0, 0.0, -1.0]) * poly.deriv())
    return np.cosh(x) ** (-beta) * poly(np.tanh(x))


def trig_pt(grid=None):
    """Trigonometric Poschl-Teller family (increasing hierarchy)."""
    default = grid or Grid(0.0, math.pi, 2001, DIRICHLET)
    return Model(
        model_id="trig_pt",
        kind=INCREASING,
        default_grid=default,
        n_min=0,
        w_fn=lambda n, x: -(n + 0.5) / np.tan(x),
        w_prime_fn=lambda n, x: (n + 0.5) / np.sin(x) ** 2,
        mu_base_fn=lambda n: n + 0.5,
        ladder_fn=_trig_ladder,
        singular_points=(0.0, math.pi),
    )


def hyp_pt(grid=None):
    """Hyperbolic Poschl-Teller family (decreasing hierarchy)."""
    default = grid or Grid(-20.0, 20.0, 4001, DECAY_TRUNCATION)
    return Model(
        model_id="hyp_pt",
        kind=DECREASING,
        default_grid=default,
        n_min=1,
        w_fn=lambda n, x: (n - 0.5) * np.tanh(x),
        w_prime_fn=lambda n, x: (n - 0.5) / np.cosh(x) ** 2,
        mu_base_fn=lambda n: n - 0.5,
        ladder_fn=_hyp_ladder,
    )


_FACTORIES = {"trig_pt": trig_pt, "hyp_pt": hyp_pt}


def get_model(model_id, grid=None):
    try:
        factory = _FACTORIES[model_id]
    except KeyError:
        raise ValueError(
            f"unknown model {model_id!r}; known: {', '.join(MODEL_IDS)}")
    return factory(grid)


def with_grid(model, grid):
    return replace(model, default_grid=grid)


def potential(model, n, x):
    """V_n(x) = w_n^2 - w_n' + sign * mu_n^2, scalar or array ``x``.

    Raises for evaluation at (or beyond) a singular domain point.
    """
    model.check_n(n)
    xs = np.asarray(x, dtype=float)
    if model.singular_points:
        left, right = model.singular_points
        if np.any(xs <= left) or np.any(xs >= right):
            raise ValueError(f"singular point in potential of {model.model_id}")
    w = model.w(n, xs)
    wp = model.w_prime(n, xs)
    val = w * w - wp + model.energy_sign * model.mu(n) ** 2
    return float(val) if np.isscalar(x) else val


def w_values(model, n, grid):
    """Superpotential sampled on a grid; dirichlet endpoints are zeroed so
    singular endpoint values never propagate (endpoint samples are treated
    as zero by all operators anyway)."""
    vals = np.zeros(grid.n_points)
    if grid.boundary == DIRICHLET:
        vals[1:-1] = model.w(n, grid.x[1:-1])
    else:
        vals[:] = model.w(n, grid.x)
    return vals


def potential_values(model, n, grid):
    """Potential sampled on a grid, with the same endpoint convention."""
    vals = np.zeros(grid.n_points)
    if grid.boundary == DIRICHLET:
        vals[1:-1] = potential(model, n, grid.x[1:-1])
    else:
        vals[:] = potential(model, n, grid.x)
    return vals


def ladder_state(model, n, k, grid=None):
    """Closed-form k-th eigenfunction of member n, L2-normalized, with the
    deterministic sign convention of ``normalize_values``."""
    model.check_state(n, k)
    grid = grid or model.default_grid
    raw = model.ladder_fn(n, k, grid.x).astype(complex)
    if grid.boundary == DIRICHLET:
        raw[0] = 0.0
        raw[-1] = 0.0
    return GridFunction(grid, normalize_values(grid, raw))


def ground_state(model, n, grid=None):
    """Normalized ground state psi_n^0 (closed form, no quadrature drift)."""
    return ladder_state(model, n, 0, grid)
