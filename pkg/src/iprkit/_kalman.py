"""Numba kernels for exact ARMA likelihood evaluation.

The state-space form is the standard companion ("Harvey") representation of a
stationary ARMA(p, q) with r = max(p, q+1) states:

    a_t = T a_{t-1} + R eps_t,    y_t = a_t[0],
    T[i, 0] = phi_{i+1}, T[i, i+1] = 1,    R = (1, theta_1, ..., theta_{r-1}).

The filter runs with eps variance 1 and returns the quantities needed for the
sigma^2-concentrated Gaussian likelihood: ssq = sum(v_t^2 / F_t) and
sumlog = sum(log F_t), plus the standardized one-step prediction errors
v_t / sqrt(F_t) (so ssq equals their sum of squares and the residuals share
the units of the data once F_t settles at 1). The companion structure is
exploited so each step costs O(r^2).
"""

import numpy as np
from numba import njit

__all__ = ["arma_filter", "css_ssq", "stationary_covariance", "build_rrt"]


@njit(cache=True)
def arma_filter(y, phi, rrt, p0):
    """Kalman filter pass for a zero-mean stationary ARMA series.

    Parameters
    ----------
    y : float64[n]
        Observations (already differenced and demeaned).
    phi : float64[r]
        Full AR polynomial coefficients padded with zeros to the state size.
    rrt : float64[r, r]
        R R' for the moving-average loading vector.
    p0 : float64[r, r]
        Stationary initial state covariance.

    Returns
    -------
    (ok, ssq, sumlog, resid, fvar): failure flag, weighted sum of squares,
    sum of log prediction variances, standardized prediction errors,
    prediction variances.
    """
    n = y.shape[0]
    r = phi.shape[0]
    a = np.zeros(r)
    p = p0.copy()
    af = np.zeros(r)
    pf = np.zeros((r, r))
    m = np.zeros((r, r))
    resid = np.zeros(n)
    fvar = np.zeros(n)
    ssq = 0.0
    sumlog = 0.0
    for t in range(n):
        f = p[0, 0]
        if not np.isfinite(f) or f < 1e-300:
            return False, 0.0, 0.0, resid, fvar
        v = y[t] - a[0]
        e = v / np.sqrt(f)
        resid[t] = e
        fvar[t] = f
        ssq += e * e
        sumlog += np.log(f)
        # Measurement update: condition on y_t.
        for i in range(r):
            af[i] = a[i] + p[i, 0] * v / f
        for i in range(r):
            for j in range(r):
                pf[i, j] = p[i, j] - p[i, 0] * p[0, j] / f
        # Time update, using the companion structure of T.
        a0 = af[0]
        for i in range(r):
            nxt = af[i + 1] if i + 1 < r else 0.0
            a[i] = phi[i] * a0 + nxt
        for i in range(r):
            for j in range(r):
                nxt = pf[i + 1, j] if i + 1 < r else 0.0
                m[i, j] = phi[i] * pf[0, j] + nxt
        for i in range(r):
            for j in range(r):
                nxt = m[i, j + 1] if j + 1 < r else 0.0
                p[i, j] = phi[j] * m[i, 0] + nxt + rrt[i, j]
    return True, ssq, sumlog, resid, fvar


@njit(cache=True)
def css_ssq(w, phi, theta):
    """Conditional sum of squares of an ARMA recursion on w.

    Innovations before index len(phi) are fixed at zero; returns the sum of
    squared innovations from that index on and the count summed over.
    """
    n = w.shape[0]
    p = phi.shape[0]
    q = theta.shape[0]
    e = np.zeros(n)
    ssq = 0.0
    count = 0
    for t in range(p, n):
        v = w[t]
        for i in range(p):
            v -= phi[i] * w[t - 1 - i]
        for j in range(q):
            if t - 1 - j >= 0:
                v -= theta[j] * e[t - 1 - j]
        e[t] = v
        ssq += v * v
        count += 1
    return ssq, count


def build_rrt(theta, r):
    """R R' for the MA loading vector R = (1, theta_1, ..., theta_{r-1})."""
    rr = np.zeros(r)
    rr[0] = 1.0
    rr[1: 1 + len(theta)] = theta
    return np.outer(rr, rr)


def stationary_covariance(phi, rrt):
    """Solve P = T P T' + R R' for the stationary initial covariance.

    Uses the Kronecker identity (I - T (x) T) vec(P) = vec(R R'); the state
    dimension never exceeds ~14 here, so the dense solve is cheap.
    """
    r = len(phi)
    t_mat = np.zeros((r, r))
    t_mat[:, 0] = phi
    for i in range(r - 1):
        t_mat[i, i + 1] = 1.0
    eye = np.eye(r * r)
    vec = np.linalg.solve(eye - np.kron(t_mat, t_mat), rrt.ravel())
    return vec.reshape(r, r)
