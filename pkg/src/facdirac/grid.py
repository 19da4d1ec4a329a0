"""Discretization backbone: uniform 1D grids, sampled complex functions and
spinors, 4th-order finite differences, trapezoid inner products (definite and
sigma3-weighted), and the interior-trimmed residual norms used by every
operator-identity check.

Two boundary treatments are supported:

* ``dirichlet`` -- endpoint samples are treated as 0 by every operator
  (ghost zeros beyond the ends); appropriate for potentials singular at the
  boundary, e.g. on (0, pi).
* ``decay_truncation`` -- the grid truncates an infinite domain; one-sided
  4th-order stencils are used at near-boundary nodes and nothing is zeroed.

Residual norms trim 5% of the domain per side: boundary-singular derivatives
of fractional-power eigenfunctions would otherwise dominate the error of
identities that are pointwise interior statements.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

DIRICHLET = "dirichlet"
DECAY_TRUNCATION = "decay_truncation"

TRIM_FRACTION = 0.05

# 4th-order central stencils.
_C1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_C2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
# 4th-order one-sided stencils (row 0: boundary node, row 1: its neighbor).
_F1 = np.array([[-25.0, 48.0, -36.0, 16.0, -3.0],
                [-3.0, -10.0, 18.0, -6.0, 1.0]]) / 12.0
_F2 = np.array([[45.0, -154.0, 214.0, -156.0, 61.0, -10.0],
                [10.0, -15.0, -4.0, 14.0, -6.0, 1.0]]) / 12.0


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [x_min, x_max] with n_points nodes."""

    x_min: float
    x_max: float
    n_points: int
    boundary: str = DIRICHLET

    def __post_init__(self):
        if self.boundary not in (DIRICHLET, DECAY_TRUNCATION):
            raise ValueError(f"unknown boundary kind {self.boundary!r}")
        if self.n_points < 16:
            raise ValueError("grid needs at least 16 points")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @cached_property
    def x(self):
        nodes = np.linspace(self.x_min, self.x_max, self.n_points)
        nodes.setflags(write=False)
        return nodes

    @cached_property
    def quadrature_weights(self):
        w = np.full(self.n_points, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        w.setflags(write=False)
        return w

    def interior_mask(self, trim=TRIM_FRACTION):
        return _interior_mask(self, trim)

    def midpoint_index(self):
        return self.n_points // 2


@lru_cache(maxsize=None)
def _interior_mask(grid, trim):
    pad = trim * (grid.x_max - grid.x_min)
    mask = (grid.x >= grid.x_min + pad) & (grid.x <= grid.x_max - pad)
    mask.setflags(write=False)
    return mask


def _check_same_grid(a, b):
    if a.grid != b.grid:
        raise ValueError("operands live on different grids")


@dataclass
class GridFunction:
    """Complex-valued function sampled on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError("values length must equal grid.n_points")

    def copy(self):
        return GridFunction(self.grid, self.values.copy())

    def __add__(self, other):
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _check_same_grid(self, other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, scalar):
        return GridFunction(self.grid, self.values * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return GridFunction(self.grid, -self.values)


@dataclass
class Spinor2:
    """Two-component spinor; both components share one grid."""

    upper: GridFunction
    lower: GridFunction

    def __post_init__(self):
        _check_same_grid(self.upper, self.lower)

    @property
    def grid(self):
        return self.upper.grid

    @property
    def components(self):
        return (self.upper, self.lower)

    def copy(self):
        return Spinor2(self.upper.copy(), self.lower.copy())

    def __add__(self, other):
        return Spinor2(self.upper + other.upper, self.lower + other.lower)

    def __sub__(self, other):
        return Spinor2(self.upper - other.upper, self.lower - other.lower)

    def __mul__(self, scalar):
        return Spinor2(self.upper * scalar, self.lower * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return Spinor2(-self.upper, -self.lower)


@dataclass
class Spinor4:
    """Four-component spinor (two stacked 2-spinors on one grid)."""

    components: tuple

    def __post_init__(self):
        self.components = tuple(self.components)
        if len(self.components) != 4:
            raise ValueError("Spinor4 needs exactly 4 components")
        for c in self.components[1:]:
            _check_same_grid(self.components[0], c)

    @property
    def grid(self):
        return self.components[0].grid

    @property
    def upper2(self):
        return Spinor2(self.components[0], self.components[1])

    @property
    def lower2(self):
        return Spinor2(self.components[2], self.components[3])

    @classmethod
    def from_halves(cls, upper2, lower2):
        return cls((upper2.upper, upper2.lower, lower2.upper, lower2.lower))

    def __add__(self, other):
        return Spinor4(tuple(a + b for a, b in
                             zip(self.components, other.components)))

    def __sub__(self, other):
        return Spinor4(tuple(a - b for a, b in
                             zip(self.components, other.components)))

    def __mul__(self, scalar):
        return Spinor4(tuple(c * scalar for c in self.components))

    __rmul__ = __mul__

    def __neg__(self):
        return Spinor4(tuple(-c for c in self.components))


def _components(f):
    if isinstance(f, GridFunction):
        return (f,)
    if isinstance(f, Spinor2):
        return f.components
    if isinstance(f, Spinor4):
        return f.components
    raise TypeError(f"expected GridFunction/Spinor2/Spinor4, got {type(f)!r}")


def derivative_values(grid, values, order):
    """Finite-difference derivative of sampled values (4th order).

    Dirichlet grids use ghost zeros beyond the ends (endpoint samples are
    forced to zero first); truncation grids use one-sided stencils at the
    four near-boundary nodes.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    n = grid.n_points
    if n < 6:
        raise ValueError("insufficient stencil support")
    h = grid.spacing
    scale = h if order == 1 else h * h
    central = (_C1 if order == 1 else _C2) / scale

    v = np.asarray(values, dtype=complex)
    if grid.boundary == DIRICHLET:
        v = v.copy()
        v[0] = 0.0
        v[-1] = 0.0
    padded = np.zeros(n + 4, dtype=complex)
    padded[2:-2] = v
    out = np.zeros(n, dtype=complex)
    for offset, coeff in enumerate(central):
        out += coeff * padded[offset:offset + n]

    if grid.boundary == DIRICHLET:
        out[0] = 0.0
        out[-1] = 0.0
        return out

    onesided = (_F1 if order == 1 else _F2) / scale
    width = onesided.shape[1]
    sign = -1.0 if order == 1 else 1.0
    for row in range(2):
        out[row] = onesided[row] @ v[:width]
        out[n - 1 - row] = sign * (onesided[row] @ v[::-1][:width])
    return out


def differentiate(f, order):
    """Derivative of a GridFunction (see ``derivative_values``)."""
    return GridFunction(f.grid, derivative_values(f.grid, f.values, order))


def inner_product(f, g, weight="definite"):
    """Trapezoid inner product <f, g>; conjugate-linear in ``f``.

    ``weight="sigma3"`` gives the indefinite product <f, sigma3 g> =
    <f_up, g_up> - <f_lo, g_lo>, defined for 2-spinors only.
    """
    fc, gc = _components(f), _components(g)
    if len(fc) != len(gc):
        raise ValueError("operands have different component counts")
    for a, b in zip(fc, gc):
        _check_same_grid(a, b)
    if weight == "definite":
        signs = (1.0,) * len(fc)
    elif weight == "sigma3":
        if len(fc) != 2:
            raise ValueError("sigma3 weight is defined for 2-spinors only")
        signs = (1.0, -1.0)
    else:
        raise ValueError(f"unknown weight {weight!r}")
    w = fc[0].grid.quadrature_weights
    total = 0.0 + 0.0j
    for s, a, b in zip(signs, fc, gc):
        total += s * np.sum(w * np.conj(a.values) * b.values)
    return complex(total)


def norm(f, weight="definite"):
    val = inner_product(f, f, weight)
    return float(np.sqrt(abs(val.real)))


def interior_norm(f, trim=TRIM_FRACTION):
    """Quadrature-consistent L2 norm restricted to the trimmed interior."""
    comps = _components(f)
    grid = comps[0].grid
    mask = grid.interior_mask(trim)
    total = 0.0
    for c in comps:
        total += float(np.sum(np.abs(c.values[mask]) ** 2))
    return float(np.sqrt(grid.spacing * total))


def relative_residual(diff, ref, trim=TRIM_FRACTION):
    """Interior norm of ``diff`` relative to the interior norm of ``ref``."""
    denom = interior_norm(ref, trim)
    if denom == 0.0:
        raise ValueError("reference has zero interior norm")
    return interior_norm(diff, trim) / denom


def normalize_values(grid, values):
    """L2-normalize and fix the global phase deterministically.

    The sample with the largest magnitude is rotated to the positive real
    axis; for nodeless ground states this is the midpoint-positive
    convention, and it stays well defined for states that vanish at the
    midpoint.
    """
    v = np.asarray(values, dtype=complex)
    w = grid.quadrature_weights
    nrm = np.sqrt(float(np.sum(w * np.abs(v) ** 2)))
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero function")
    v = v / nrm
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    v = v * (abs(pivot) / pivot)
    return v


def normalized(f):
    return GridFunction(f.grid, normalize_values(f.grid, f.values))


def normalize_spinor(psi):
    """L2-normalize a spinor; global phase makes the dominant component's
    largest sample real positive."""
    comps = _components(psi)
    grid = comps[0].grid
    w = grid.quadrature_weights
    nrm = np.sqrt(sum(float(np.sum(w * np.abs(c.values) ** 2))
                      for c in comps))
    if nrm == 0.0:
        raise ValueError("cannot normalize the zero spinor")
    comp_norms = [float(np.sum(w * np.abs(c.values) ** 2)) for c in comps]
    dom = comps[int(np.argmax(comp_norms))].values
    pivot = dom[int(np.argmax(np.abs(dom)))]
    phase = abs(pivot) / pivot if pivot != 0.0 else 1.0
    scaled = [GridFunction(grid, c.values * (phase / nrm)) for c in comps]
    if len(scaled) == 2:
        return Spinor2(*scaled)
    if len(scaled) == 4:
        return Spinor4(tuple(scaled))
    return scaled[0]


def overlap(f, g):
    """|<f, g>| for unit-normalized arguments."""
    return abs(inner_product(f, g)) / (norm(f) * norm(g))


# ---------------------------------------------------------------------------
# Seeded test functions for identity checks: smooth, band-limited, and small
# at the boundary so finite-difference error stays below the tolerances.

def gaussian_bump(grid, rng, n_bumps=3):
    """Sum of complex Gaussian bumps supported in the middle of the domain."""
    span = grid.x_max - grid.x_min
    x = grid.x
    v = np.zeros(grid.n_points, dtype=complex)
    for _ in range(n_bumps):
        center = grid.x_min + span * rng.uniform(0.3, 0.7)
        width = span * rng.uniform(0.05, 0.12)
        amp = rng.normal() + 1j * rng.normal()
        v += amp * np.exp(-((x - center) / width) ** 2)
    if grid.boundary == DIRICHLET:
        v[0] = 0.0
        v[-1] = 0.0
    return GridFunction(grid, v)


def sine_polynomial(grid, rng, k_max=6):
    """Low-order sine series vanishing exactly at both ends."""
    span = grid.x_max - grid.x_min
    u = np.pi * (grid.x - grid.x_min) / span
    v = np.zeros(grid.n_points, dtype=complex)
    for k in range(1, k_max + 1):
        v += (rng.normal() + 1j * rng.normal()) * np.sin(k * u)
    return GridFunction(grid, v)


def bump_spinor2(grid, rng, n_bumps=3):
    return Spinor2(gaussian_bump(grid, rng, n_bumps),
                   gaussian_bump(grid, rng, n_bumps))


def bump_spinor4(grid, rng, n_bumps=3):
    return Spinor4(tuple(gaussian_bump(grid, rng, n_bumps)
                         for _ in range(4)))
