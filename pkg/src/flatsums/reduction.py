"""Accurate evaluation kernels for sums of sin/cos(lambda*x) with integer lambda.

The difficulty: for lambda ~ 1e6 and x ~ 1, the plain double product
lambda*x loses ~20 low bits before libm ever sees it, which is fatal when
certifying extrema to 1e-9.  Two exact paths are used instead:

* a two-word (double-double) reduction of lambda*x modulo 2*pi, valid for
  any float x as long as |lambda*x| < 2^52;
* an integer path for dyadic points x = 2*pi*t/2^q (q <= 62-bit products):
  lambda*t mod 2^q is exact in int64 because the modulus is a power of two.

Sums over terms use pairwise summation (numpy) or math.fsum (scalar);
a plain left-to-right fold is never used.
"""

from __future__ import annotations

import math

import numpy as np

# 2*pi split into two non-overlapping words: TWO_PI_HI + TWO_PI_LO matches
# 2*pi to ~1e-32, so k*(2*pi residual) stays < 1e-18 even for k ~ 2^46.
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16
INV_TWO_PI = 0.15915494309189535
_SPLITTER = 134217729.0  # 2^27 + 1, Dekker split constant

# |lambda * x| above this cannot be rounded to an exact integer multiple
# count k in one double, so the reduction would silently degrade.
MAX_EXACT_PRODUCT = 2.0**52


def _two_prod(a, b):
    """a*b as (head, tail) with head+tail exact (Dekker, no FMA needed)."""
    p = a * b
    aa = _SPLITTER * a
    ah = aa - (aa - a)
    al = a - ah
    bb = _SPLITTER * b
    bh = bb - (bb - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


def _two_sum(a, b):
    """a+b as (head, tail) with head+tail exact (Knuth)."""
    s = a + b
    t = s - a
    err = (a - (s - t)) + (b - t)
    return s, err


def reduce_mod_two_pi(lam, x):
    """lambda*x reduced into [-pi-eps, pi+eps], accurate to ~1e-16 absolute.

    ``lam`` must hold integer values; works elementwise on arrays.
    Caller guarantees |lam*x| < 2^52 (checked at the call sites).
    """
    p, e = _two_prod(lam, x)
    k = np.rint(p * INV_TWO_PI)
    kh, kl = _two_prod(k, TWO_PI_HI)
    d, dd = _two_sum(p, -kh)
    return d + (((e - kl) + dd) - k * TWO_PI_LO)


def reduce_scalar(lam: float, x: float) -> float:
    p, e = _two_prod(lam, x)
    k = float(np.rint(p * INV_TWO_PI))
    kh, kl = _two_prod(k, TWO_PI_HI)
    d, dd = _two_sum(p, -kh)
    return d + (((e - kl) + dd) - k * TWO_PI_LO)


def sin_sum_scalar(values, weights, x: float) -> float:
    """sum_j w_j * sin(v_j * x) via exact reduction + fsum."""
    terms = [w * math.sin(reduce_scalar(float(v), x)) for v, w in zip(values, weights)]
    return math.fsum(terms)


def cos_sum_scalar(values, weights, x: float) -> float:
    terms = [w * math.cos(reduce_scalar(float(v), x)) for v, w in zip(values, weights)]
    return math.fsum(terms)


def _chunked_points(n_points: int, n_terms: int, cap: int = 4_000_000):
    step = max(1, cap // max(1, n_terms))
    for lo in range(0, n_points, step):
        yield lo, min(n_points, lo + step)


def trig_sums_at(values, weights, xs, want_sine: bool, want_derivative: bool = False):
    """Evaluate f (and optionally f') of the weighted trig sum at float points.

    f = sum w*sin(v*x) when ``want_sine`` else sum w*cos(v*x);
    f' = sum w*v*cos(v*x) resp. -sum w*v*sin(v*x).
    Returns ``f`` or ``(f, fp)`` as float64 arrays shaped like ``xs``.
    """
    xs = np.asarray(xs, dtype=np.float64)
    flat = xs.ravel()
    vals = np.asarray(values, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    wv = w * vals
    out = np.empty(flat.shape, dtype=np.float64)
    out_d = np.empty(flat.shape, dtype=np.float64) if want_derivative else None
    for lo, hi in _chunked_points(flat.size, vals.size):
        ang = reduce_mod_two_pi(vals[None, :], flat[lo:hi, None])
        s = np.sin(ang)
        # .sum(axis=1) is numpy pairwise summation; a left fold is not.
        if want_sine:
            out[lo:hi] = (s * w).sum(axis=1)
            if want_derivative:
                out_d[lo:hi] = (np.cos(ang) * wv).sum(axis=1)
        else:
            out[lo:hi] = (np.cos(ang) * w).sum(axis=1)
            if want_derivative:
                out_d[lo:hi] = -(s * wv).sum(axis=1)
    if want_derivative:
        return out.reshape(xs.shape), out_d.reshape(xs.shape)
    return out.reshape(xs.shape)


def trig_sums_dyadic(values, weights, t, q: int, want_sine: bool,
                     want_derivative: bool = False):
    """Same as :func:`trig_sums_at` but at exact dyadic points x = 2*pi*t/2^q.

    Exact because (v*t) mod 2^q == ((v mod 2^q)*(t mod 2^q)) mod 2^q and the
    masked product stays below 2^62 for q <= 31; int64 never overflows.
    """
    if q > 31:
        raise ValueError("dyadic path limited to q <= 31")
    t = np.asarray(t, dtype=np.int64)
    vals = np.asarray(values, dtype=np.int64)
    mask = (np.int64(1) << q) - 1
    vr = vals & mask
    tr = t & mask
    w = np.asarray(weights, dtype=np.float64)
    wv = w * np.asarray(values, dtype=np.float64)
    scale = TWO_PI_HI / float(1 << q)
    out = np.empty(t.shape, dtype=np.float64)
    out_d = np.empty(t.shape, dtype=np.float64) if want_derivative else None
    for lo, hi in _chunked_points(t.size, vals.size):
        idx = (tr[lo:hi, None] * vr[None, :]) & mask
        ang = idx * scale
        s = np.sin(ang)
        if want_sine:
            out[lo:hi] = (s * w).sum(axis=1)
            if want_derivative:
                out_d[lo:hi] = (np.cos(ang) * wv).sum(axis=1)
        else:
            out[lo:hi] = (np.cos(ang) * w).sum(axis=1)
            if want_derivative:
                out_d[lo:hi] = -(s * wv).sum(axis=1)
    if want_derivative:
        return out, out_d
    return out
