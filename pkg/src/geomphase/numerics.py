"""Grid numerics shared across the package: angle reduction, finite differences
and composite Simpson quadrature on sampled curves.

All phase arithmetic is done modulo 2*pi with the representative interval
(-pi, pi].  Derivatives and integrals operate on the sample grid that produced
the data; nothing here interpolates.
"""

from __future__ import annotations

import math

import numpy as np

TAU = 2.0 * math.pi

__all__ = [
    "TAU",
    "wrap_angle",
    "circ_distance",
    "grid_derivative",
    "simpson_integral",
    "cumulative_simpson",
]


def wrap_angle(angle):
    """Reduce an angle (scalar or array) to the interval (-pi, pi]."""
    wrapped = np.remainder(np.asarray(angle, dtype=float) + math.pi, TAU) - math.pi
    # remainder sends exact odd multiples of pi to -pi; fold onto +pi
    wrapped = np.where(wrapped <= -math.pi, wrapped + TAU, wrapped)
    if np.ndim(angle) == 0:
        return float(wrapped)
    return wrapped


def circ_distance(a, b):
    """Distance between two angles on the circle, in [0, pi]."""
    d = wrap_angle(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))
    out = np.abs(d)
    if np.ndim(a) == 0 and np.ndim(b) == 0:
        return float(out)
    return out


def _is_uniform(params):
    diffs = np.diff(params)
    return bool(np.allclose(diffs, diffs[0], rtol=1e-9, atol=1e-14 * abs(diffs[0])))


def grid_derivative(values, params):
    """Differentiate sampled values along axis 0 with respect to params.

    Uniform grids with >= 5 points use 4th-order stencils throughout: central
    in the interior, one-sided (5-point) at the ends and offset-centered just
    inside them.  Shorter or non-uniform grids fall back to numpy.gradient.
    """
    values = np.asarray(values)
    params = np.asarray(params, dtype=float)
    n = params.shape[0]
    if values.shape[0] != n:
        raise ValueError("values and params must share the leading axis")
    if n < 2:
        raise ValueError("need at least two samples to differentiate")
    if n < 5 or not _is_uniform(params):
        edge = 2 if n >= 3 else 1
        return np.gradient(values, params, axis=0, edge_order=edge)

    h = (params[-1] - params[0]) / (n - 1)
    out = np.empty_like(values, dtype=np.result_type(values, float))
    out[2:-2] = (values[:-4] - 8.0 * values[1:-3]
                 + 8.0 * values[3:-1] - values[4:]) / (12.0 * h)
    out[0] = (-25.0 * values[0] + 48.0 * values[1] - 36.0 * values[2]
              + 16.0 * values[3] - 3.0 * values[4]) / (12.0 * h)
    out[1] = (-3.0 * values[0] - 10.0 * values[1] + 18.0 * values[2]
              - 6.0 * values[3] + values[4]) / (12.0 * h)
    out[-2] = (3.0 * values[-1] + 10.0 * values[-2] - 18.0 * values[-3]
               + 6.0 * values[-4] - values[-5]) / (12.0 * h)
    out[-1] = (25.0 * values[-1] - 48.0 * values[-2] + 36.0 * values[-3]
               - 16.0 * values[-4] + 3.0 * values[-5]) / (12.0 * h)
    return out


def _check_quadrature_args(values, params):
    values = np.asarray(values, dtype=float)
    params = np.asarray(params, dtype=float)
    if values.shape != params.shape or values.ndim != 1:
        raise ValueError("values and params must be 1-d arrays of equal length")
    if params.shape[0] < 2:
        raise ValueError("need at least two samples to integrate")
    if np.any(np.diff(params) <= 0):
        raise ValueError("params must be strictly increasing")
    return values, params


def simpson_integral(values, params):
    """Composite Simpson rule on the given grid.

    Consecutive sample pairs are combined with the (generally non-uniform)
    three-point Simpson formula; an odd trailing interval is closed with the
    trapezoid rule.  Two samples total degrade to a single trapezoid.
    """
    y, x = _check_quadrature_args(values, params)
    m = x.shape[0] - 1  # number of intervals
    end = m if m % 2 == 0 else m - 1
    total = 0.0
    if end > 0:
        h0 = x[1:end:2] - x[0:end:2]
        h1 = x[2:end + 1:2] - x[1:end:2]
        hs = h0 + h1
        total += float(np.sum(hs / 6.0 * ((2.0 - h1 / h0) * y[0:end:2]
                                          + hs * hs / (h0 * h1) * y[1:end:2]
                                          + (2.0 - h0 / h1) * y[2:end + 1:2])))
    if m % 2 == 1:
        total += 0.5 * (x[-1] - x[-2]) * (y[-1] + y[-2])
    return total


def cumulative_simpson(values, params):
    """Running integral I[k] = integral of values over params[0..k].

    Even prefixes use the composite Simpson rule; odd prefixes close the last
    interval with a trapezoid on top of the Simpson sum, matching
    simpson_integral on every prefix.  I[0] = 0.
    """
    y, x = _check_quadrature_args(values, params)
    n = x.shape[0]
    out = np.zeros(n)
    if n == 1:
        return out
    # Simpson increments over pairs (2j, 2j+1, 2j+2)
    if n >= 3:
        pairs = (n - 1) // 2
        h0 = x[1:2 * pairs:2] - x[0:2 * pairs - 1:2]
        h1 = x[2:2 * pairs + 1:2] - x[1:2 * pairs:2]
        hs = h0 + h1
        inc = hs / 6.0 * ((2.0 - h1 / h0) * y[0:2 * pairs - 1:2]
                          + hs * hs / (h0 * h1) * y[1:2 * pairs:2]
                          + (2.0 - h0 / h1) * y[2:2 * pairs + 1:2])
        out[2::2] = np.cumsum(inc)
    # odd prefixes: trapezoid over the final interval
    out[1::2] = out[0:-1:2] + 0.5 * (x[1::2] - x[0:-1:2]) * (y[1::2] + y[0:-1:2])
    return out
