"""Symmetric tridiagonal eigensolver kernels, pure-Python lane.

Mirrors the compiled extension ``facdirac._tridiag``; ``facdirac.eigensolver``
selects one of the two at import time.  The bisection kernel is vectorized
over the bisection targets so the fallback remains usable at production grid
sizes (a few thousand nodes); the QL sweep and the inverse-iteration solve are
plain loops, adequate for the matrix sizes they are used at.

Conventions: ``d`` is the diagonal (length n), ``e`` the off-diagonal
(length n-1), both float64.
"""

import math

import numpy as np

_EPS = np.finfo(float).eps
_SAFMIN = np.finfo(float).tiny / _EPS


def _as_float_arrays(d, e):
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    if d.ndim != 1 or e.ndim != 1 or e.shape[0] != max(d.shape[0] - 1, 0):
        raise ValueError("expected diagonal (n) and off-diagonal (n-1) arrays")
    return d, e


def gershgorin_bounds(d, e):
    """Interval certain to contain the whole spectrum."""
    d, e = _as_float_arrays(d, e)
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    return float(np.min(d - radius)), float(np.max(d + radius))


def _pivmin(e2):
    return max(_SAFMIN, float(e2.max(initial=0.0)) * _SAFMIN)


def sturm_counts(d, e, xs):
    """Number of eigenvalues strictly below each shift in ``xs``.

    Standard Sturm-sequence recurrence, run simultaneously for all shifts.
    """
    d, e = _as_float_arrays(d, e)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    e2 = e * e
    pivmin = _pivmin(e2)
    q = d[0] - xs
    counts = (q < 0.0).astype(np.int64)
    for i in range(1, d.shape[0]):
        np.copyto(q, -pivmin, where=np.abs(q) < pivmin)
        q = d[i] - xs - e2[i - 1] / q
        counts += q < 0.0
    return counts


def sturm_count_below(d, e, x):
    return int(sturm_counts(d, e, x)[0])


def smallest_eigenvalues(d, e, k):
    """The ``k`` algebraically smallest eigenvalues, ascending, by bisection."""
    d, e = _as_float_arrays(d, e)
    n = d.shape[0]
    if not 1 <= k <= n:
        raise ValueError("k must be in 1..n")
    lo0, hi0 = gershgorin_bounds(d, e)
    span = max(hi0 - lo0, 1.0)
    tol = 4.0 * _EPS * max(abs(lo0), abs(hi0), 1.0)
    lo = np.full(k, lo0 - span * 1e-12)
    hi = np.full(k, hi0 + span * 1e-12)
    idx = np.arange(k)
    for _ in range(128):
        mid = 0.5 * (lo + hi)
        counts = sturm_counts(d, e, mid)
        above = counts > idx  # count(mid) > j  <=>  lambda_j < mid
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.max(hi - lo) <= tol:
            break
    return 0.5 * (lo + hi)


def ql_all_eigenvalues(d, e):
    """All eigenvalues via the implicit-shift QL sweep, ascending.

    Eigenvalues only (no rotation accumulation); O(n^2) scalar work, meant
    for full-spectrum cross-checks at moderate n.
    """
    d, e = _as_float_arrays(d, e)
    n = d.shape[0]
    dd = d.copy()
    ee = np.append(e.copy(), 0.0)
    for l in range(n):
        for _ in range(64):
            m = l
            while m < n - 1:
                scale = abs(dd[m]) + abs(dd[m + 1])
                if abs(ee[m]) <= _EPS * scale:
                    break
                m += 1
            if m == l:
                break
            g = (dd[l + 1] - dd[l]) / (2.0 * ee[l])
            r = math.hypot(g, 1.0)
            g = dd[m] - dd[l] + ee[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * ee[i]
                b = c * ee[i]
                r = math.hypot(f, g)
                ee[i + 1] = r
                if r == 0.0:
                    dd[i + 1] -= p
                    ee[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = dd[i + 1] - p
                r = (dd[i] - g) * s + 2.0 * c * b
                p = s * r
                dd[i + 1] = g + p
                g = c * r - b
            if underflow:
                continue
            dd[l] -= p
            ee[l] = g
            ee[m] = 0.0
        else:
            raise RuntimeError("QL sweep failed to converge")
    return np.sort(dd)


def _solve_shifted(d, e, shift, rhs, pivmin):
    """Solve (T - shift*I) x = rhs by Gaussian elimination with partial
    pivoting; near-singular pivots are clamped, which is exactly what
    inverse iteration wants."""
    n = d.shape[0]
    b = d - shift           # main diagonal
    c1 = np.append(e, 0.0)  # first superdiagonal
    c2 = np.zeros(n)        # second superdiagonal (fill-in from row swaps)
    x = np.asarray(rhs, dtype=float).copy()
    for i in range(n - 1):
        sub = e[i]
        if abs(b[i]) < abs(sub):  # swap rows i, i+1
            b[i], sub = sub, b[i]
            c1[i], b[i + 1] = b[i + 1], c1[i]
            c2[i], c1[i + 1] = c1[i + 1], 0.0
            x[i], x[i + 1] = x[i + 1], x[i]
        piv = b[i]
        if abs(piv) < pivmin:
            piv = math.copysign(pivmin, piv if piv != 0.0 else 1.0)
            b[i] = piv
        mult = sub / piv
        b[i + 1] -= mult * c1[i]
        c1[i + 1] -= mult * c2[i]
        x[i + 1] -= mult * x[i]
    if abs(b[n - 1]) < pivmin:
        b[n - 1] = math.copysign(pivmin, b[n - 1] if b[n - 1] != 0.0 else 1.0)
    x[n - 1] /= b[n - 1]
    if n >= 2:
        x[n - 2] = (x[n - 2] - c1[n - 2] * x[n - 1]) / b[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - c1[i] * x[i + 1] - c2[i] * x[i + 2]) / b[i]
    return x


def eigenvector_inverse_iteration(d, e, lam, prev=None):
    """Unit eigenvector for eigenvalue ``lam`` by inverse iteration.

    ``prev``: eigenvectors of earlier (possibly clustered) eigenvalues to
    orthogonalize against; required for multiple eigenvalues, harmless
    otherwise.
    """
    d, e = _as_float_arrays(d, e)
    n = d.shape[0]
    pivmin = _pivmin(e * e) + _SAFMIN
    prev = [] if prev is None else list(prev)
    # Deterministic, sign-free start vector (identical in both lanes).
    v = 1.0 + 0.1 * np.sin(1.7 * np.arange(n) + 0.3)
    v /= np.linalg.norm(v)
    for attempt in range(4):
        for _ in range(8):
            w = _solve_shifted(d, e, lam, v, pivmin)
            for p in prev:
                w -= np.dot(p, w) * p
            nw = np.linalg.norm(w)
            if nw == 0.0:
                break
            w /= nw
            if abs(np.dot(w, v)) > 1.0 - 1e-12:
                return w
            v = w
        else:
            return v
        # Defective start (parallel to the deflated subspace): restart.
        v = np.cos(0.9 * np.arange(n) + 2.0 * attempt + 1.0)
        for p in prev:
            v -= np.dot(p, v) * p
        nv = np.linalg.norm(v)
        if nv > 0.0:
            v /= nv
    return v
