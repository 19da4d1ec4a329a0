# cython: boundscheck=False, wraparound=False, cdivision=True
"""Symmetric tridiagonal eigensolver kernels, compiled lane.

Same public surface and numerics as ``facdirac._tridiag_py``; the inner
loops (Sturm recurrence, QL sweep, pivoted tridiagonal solve) are scalar
and benefit directly from compilation.
"""

import numpy as np

from libc.math cimport cos, fabs, hypot, sin, copysign

cdef double _EPS = 2.220446049250313e-16
cdef double _SAFMIN = 2.2250738585072014e-308 / 2.220446049250313e-16


def gershgorin_bounds(d, e):
    """Interval certain to contain the whole spectrum."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=float)
    cdef Py_ssize_t n = dv.shape[0], i
    cdef double lo, hi, r
    lo = hi = dv[0]
    for i in range(n):
        r = 0.0
        if i > 0:
            r += fabs(ev[i - 1])
        if i < n - 1:
            r += fabs(ev[i])
        if dv[i] - r < lo:
            lo = dv[i] - r
        if dv[i] + r > hi:
            hi = dv[i] + r
    return lo, hi


cdef double _pivmin(double[::1] e):
    cdef double m = 0.0
    cdef Py_ssize_t i
    for i in range(e.shape[0]):
        if e[i] * e[i] > m:
            m = e[i] * e[i]
    m *= _SAFMIN
    return m if m > _SAFMIN else _SAFMIN


cdef Py_ssize_t _count_below(double[::1] d, double[::1] e, double x,
                             double pivmin) nogil:
    cdef Py_ssize_t n = d.shape[0], i, count = 0
    cdef double q = d[0] - x
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if fabs(q) < pivmin:
            q = -pivmin
        q = d[i] - x - e[i - 1] * e[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_counts(d, e, xs):
    """Number of eigenvalues strictly below each shift in ``xs``."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=float)
    xs_arr = np.atleast_1d(np.asarray(xs, dtype=float))
    cdef double[::1] xv = np.ascontiguousarray(xs_arr)
    out = np.empty(xs_arr.shape[0], dtype=np.int64)
    cdef long long[::1] ov = out
    cdef double pivmin = _pivmin(ev)
    cdef Py_ssize_t j
    for j in range(xv.shape[0]):
        ov[j] = _count_below(dv, ev, xv[j], pivmin)
    return out


def sturm_count_below(d, e, x):
    return int(sturm_counts(d, e, x)[0])


def smallest_eigenvalues(d, e, k):
    """The ``k`` algebraically smallest eigenvalues, ascending, by bisection."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=float)
    cdef Py_ssize_t n = dv.shape[0], kk = int(k), j, it
    if kk < 1 or kk > n:
        raise ValueError("k must be in 1..n")
    lo0, hi0 = gershgorin_bounds(d, e)
    cdef double span = hi0 - lo0 if hi0 - lo0 > 1.0 else 1.0
    cdef double tol = 4.0 * _EPS * max(fabs(lo0), fabs(hi0), 1.0)
    cdef double pivmin = _pivmin(ev)
    out = np.empty(kk, dtype=float)
    cdef double[::1] res = out
    cdef double lo, hi, mid
    for j in range(kk):
        lo = lo0 - span * 1e-12
        hi = hi0 + span * 1e-12
        for it in range(128):
            mid = 0.5 * (lo + hi)
            if _count_below(dv, ev, mid, pivmin) > j:
                hi = mid
            else:
                lo = mid
            if hi - lo <= tol:
                break
        res[j] = 0.5 * (lo + hi)
    return out


def ql_all_eigenvalues(d, e):
    """All eigenvalues via the implicit-shift QL sweep, ascending."""
    dd_arr = np.array(d, dtype=float, copy=True)
    ee_arr = np.append(np.asarray(e, dtype=float), 0.0)
    cdef double[::1] dd = dd_arr
    cdef double[::1] ee = ee_arr
    cdef Py_ssize_t n = dd.shape[0], l, m, i, sweep
    cdef double g, r, s, c, p, f, b, scale
    cdef bint underflow
    for l in range(n):
        for sweep in range(64):
            m = l
            while m < n - 1:
                scale = fabs(dd[m]) + fabs(dd[m + 1])
                if fabs(ee[m]) <= _EPS * scale:
                    break
                m += 1
            if m == l:
                break
            g = (dd[l + 1] - dd[l]) / (2.0 * ee[l])
            r = hypot(g, 1.0)
            g = dd[m] - dd[l] + ee[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * ee[i]
                b = c * ee[i]
                r = hypot(f, g)
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
    return np.sort(dd_arr)


cdef void _solve_shifted(double[::1] d, double[::1] e, double shift,
                         double[::1] x, double pivmin,
                         double[::1] b, double[::1] c1, double[::1] c2) nogil:
    # Gaussian elimination with partial pivoting; x holds rhs on entry,
    # solution on exit.  b/c1/c2 are scratch diagonals (fill-in in c2).
    cdef Py_ssize_t n = d.shape[0], i
    cdef double sub, piv, mult, tmp
    for i in range(n):
        b[i] = d[i] - shift
        c1[i] = e[i] if i < n - 1 else 0.0
        c2[i] = 0.0
    for i in range(n - 1):
        sub = e[i]
        if fabs(b[i]) < fabs(sub):
            tmp = b[i]; b[i] = sub; sub = tmp
            tmp = c1[i]; c1[i] = b[i + 1]; b[i + 1] = tmp
            c2[i] = c1[i + 1]; c1[i + 1] = 0.0
            tmp = x[i]; x[i] = x[i + 1]; x[i + 1] = tmp
        piv = b[i]
        if fabs(piv) < pivmin:
            piv = copysign(pivmin, piv if piv != 0.0 else 1.0)
            b[i] = piv
        mult = sub / piv
        b[i + 1] -= mult * c1[i]
        c1[i + 1] -= mult * c2[i]
        x[i + 1] -= mult * x[i]
    if fabs(b[n - 1]) < pivmin:
        b[n - 1] = copysign(pivmin, b[n - 1] if b[n - 1] != 0.0 else 1.0)
    x[n - 1] /= b[n - 1]
    if n >= 2:
        x[n - 2] = (x[n - 2] - c1[n - 2] * x[n - 1]) / b[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (x[i] - c1[i] * x[i + 1] - c2[i] * x[i + 2]) / b[i]


def eigenvector_inverse_iteration(d, e, lam, prev=None):
    """Unit eigenvector for eigenvalue ``lam`` by inverse iteration."""
    cdef double[::1] dv = np.ascontiguousarray(d, dtype=float)
    cdef double[::1] ev = np.ascontiguousarray(e, dtype=float)
    cdef Py_ssize_t n = dv.shape[0], i
    cdef double pivmin = _pivmin(ev) + _SAFMIN
    cdef double shift = float(lam)
    prev_list = [] if prev is None else [np.ascontiguousarray(p, dtype=float)
                                         for p in prev]
    scratch_b = np.empty(n)
    scratch_c1 = np.empty(n)
    scratch_c2 = np.empty(n)
    cdef double[::1] sb = scratch_b, sc1 = scratch_c1, sc2 = scratch_c2
    v = 1.0 + 0.1 * np.sin(1.7 * np.arange(n) + 0.3)
    v /= np.linalg.norm(v)
    cdef double[::1] wv
    for attempt in range(4):
        for _ in range(8):
            w = v.copy()
            wv = w
            _solve_shifted(dv, ev, shift, wv, pivmin, sb, sc1, sc2)
            for p in prev_list:
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
        v = np.cos(0.9 * np.arange(n) + 2.0 * attempt + 1.0)
        for p in prev_list:
            v -= np.dot(p, v) * p
        nv = np.linalg.norm(v)
        if nv > 0.0:
            v /= nv
    return v
