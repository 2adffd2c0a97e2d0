"""Vectorised NumPy implementation of the two-phase trial kernel.

Arithmetic is written on split real/imaginary arrays in the same operation
order as ``_ckernel.pyx`` so both backends make bit-identical decisions.
"""
from __future__ import annotations

import numpy as np

# column order of the returned counters
E2E_X1, E2E_X2, P1_X1, P1_X2, P2_X1, P2_X2 = range(6)


def _nearest(yr, yi, gr, gi, pr, pi):
    best = np.zeros(yr.shape, dtype=np.int64)
    best_d = np.full(yr.shape, np.inf)
    for k in range(len(pr)):
        cr = gr * pr[k] - gi * pi[k]
        ci = gr * pi[k] + gi * pr[k]
        dr = yr - cr
        di = yi - ci
        d = dr * dr + di * di
        better = d < best_d
        best[better] = k
        best_d[better] = d[better]
    return best


def _sic(yr, yi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i):
    k = _nearest(yr, yi, g1r, g1i, p1r, p1i)
    xr = p1r[k]
    xi = p1i[k]
    rr = yr - (g1r * xr - g1i * xi)
    ri = yi - (g1r * xi + g1i * xr)
    j = _nearest(rr, ri, g2r, g2i, p2r, p2i)
    return k, j


def _jml(yr, yi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i):
    m2 = len(p2r)
    best = np.zeros(yr.shape, dtype=np.int64)
    best_d = np.full(yr.shape, np.inf)
    for k in range(len(p1r)):
        c1r = g1r * p1r[k] - g1i * p1i[k]
        c1i = g1r * p1i[k] + g1i * p1r[k]
        for j in range(m2):
            c2r = g2r * p2r[j] - g2i * p2i[j]
            c2i = g2r * p2i[j] + g2i * p2r[j]
            dr = (yr - c1r) - c2r
            di = (yi - c1i) - c2i
            d = dr * dr + di * di
            better = d < best_d
            best[better] = k * m2 + j
            best_d[better] = d[better]
    return best // m2, best % m2


def _uplink(i1, i2, h_re, h_im, nr, ni, spr1, spr2, p1r, p1i, p2r, p2i):
    u1r = spr1 * p1r[i1]
    u1i = spr1 * p1i[i1]
    u2r = spr2 * p2r[i2]
    u2i = spr2 * p2i[i2]
    v1r = u1r * h_re[2] - u1i * h_im[2]
    v1i = u1r * h_im[2] + u1i * h_re[2]
    v2r = u2r * h_re[3] - u2i * h_im[3]
    v2i = u2r * h_im[3] + u2i * h_re[3]
    return (v1r + v2r) + nr, (v1i + v2i) + ni


def simulate_block(sym1, sym2, h_re, h_im, n_re, n_im, gains,
                   p1r, p1i, p2r, p2i, err1, err2,
                   dest_jml, genie, per_phase):
    """Run a block of trials and return the six bit-error counters.

    ``h_*`` rows are the SR1, SR2, R1D, R2D links; ``n_*`` rows are the
    noise at R1, R2 and D. ``gains`` holds sqrt(ps), sqrt(alpha1),
    sqrt(alpha2), sqrt(ps*alpha1), sqrt(ps*alpha2), sqrt(pr1), sqrt(pr2).
    ``err1[a, b]`` is the number of differing bits between labels a and b.
    """
    sps, sa1, sa2, gs1, gs2, spr1, spr2 = gains
    x1r, x1i = p1r[sym1], p1i[sym1]
    x2r, x2i = p2r[sym2], p2i[sym2]
    tr = sps * (sa1 * x1r + sa2 * x2r)
    ti = sps * (sa1 * x1i + sa2 * x2i)

    # phase 1: R1 detects x1 directly, R2 runs SIC for x2
    hr, hi = h_re[0], h_im[0]
    yr = (tr * hr - ti * hi) + n_re[0]
    yi = (tr * hi + ti * hr) + n_im[0]
    r1 = _nearest(yr, yi, gs1 * hr, gs1 * hi, p1r, p1i)

    hr, hi = h_re[1], h_im[1]
    yr = (tr * hr - ti * hi) + n_re[1]
    yi = (tr * hi + ti * hr) + n_im[1]
    _, r2 = _sic(yr, yi, gs1 * hr, gs1 * hi, gs2 * hr, gs2 * hi, p1r, p1i, p2r, p2i)

    detect = _jml if dest_jml else _sic
    g = (spr1 * h_re[2], spr1 * h_im[2], spr2 * h_re[3], spr2 * h_im[3])
    pts = (p1r, p1i, p2r, p2i)

    out = np.zeros(6, dtype=np.int64)
    if per_phase or genie:
        ydr, ydi = _uplink(sym1, sym2, h_re, h_im, n_re[2], n_im[2], spr1, spr2, *pts)
        d1, d2 = detect(ydr, ydi, *g, *pts)
        out[P2_X1] = err1[sym1, d1].sum()
        out[P2_X2] = err2[sym2, d2].sum()
    if genie:
        out[E2E_X1], out[E2E_X2] = out[P2_X1], out[P2_X2]
    else:
        ydr, ydi = _uplink(r1, r2, h_re, h_im, n_re[2], n_im[2], spr1, spr2, *pts)
        d1, d2 = detect(ydr, ydi, *g, *pts)
        out[E2E_X1] = err1[sym1, d1].sum()
        out[E2E_X2] = err2[sym2, d2].sum()
    out[P1_X1] = err1[sym1, r1].sum()
    out[P1_X2] = err2[sym2, r2].sum()
    if not per_phase:
        out[P2_X1:] = 0
    return out
