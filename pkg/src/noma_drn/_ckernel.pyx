# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernel.simulate_block``.

Operation order mirrors the NumPy version line for line; keep them in sync.
"""
import numpy as np

from libc.math cimport INFINITY


cdef inline Py_ssize_t _nearest(double yr, double yi, double gr, double gi,
                                const double[:] pr, const double[:] pi) noexcept nogil:
    cdef Py_ssize_t k, best = 0
    cdef double cr, ci, dr, di, d, best_d = INFINITY
    for k in range(pr.shape[0]):
        cr = gr * pr[k] - gi * pi[k]
        ci = gr * pi[k] + gi * pr[k]
        dr = yr - cr
        di = yi - ci
        d = dr * dr + di * di
        if d < best_d:
            best = k
            best_d = d
    return best


cdef inline void _sic(double yr, double yi, double g1r, double g1i,
                      double g2r, double g2i,
                      const double[:] p1r, const double[:] p1i,
                      const double[:] p2r, const double[:] p2i,
                      Py_ssize_t *k, Py_ssize_t *j) noexcept nogil:
    cdef double xr, xi, rr, ri
    k[0] = _nearest(yr, yi, g1r, g1i, p1r, p1i)
    xr = p1r[k[0]]
    xi = p1i[k[0]]
    rr = yr - (g1r * xr - g1i * xi)
    ri = yi - (g1r * xi + g1i * xr)
    j[0] = _nearest(rr, ri, g2r, g2i, p2r, p2i)


cdef inline void _jml(double yr, double yi, double g1r, double g1i,
                      double g2r, double g2i,
                      const double[:] p1r, const double[:] p1i,
                      const double[:] p2r, const double[:] p2i,
                      Py_ssize_t *k_out, Py_ssize_t *j_out) noexcept nogil:
    cdef Py_ssize_t k, j, m2 = p2r.shape[0], best = 0
    cdef double c1r, c1i, c2r, c2i, dr, di, d, best_d = INFINITY
    for k in range(p1r.shape[0]):
        c1r = g1r * p1r[k] - g1i * p1i[k]
        c1i = g1r * p1i[k] + g1i * p1r[k]
        for j in range(m2):
            c2r = g2r * p2r[j] - g2i * p2i[j]
            c2i = g2r * p2i[j] + g2i * p2r[j]
            dr = (yr - c1r) - c2r
            di = (yi - c1i) - c2i
            d = dr * dr + di * di
            if d < best_d:
                best = k * m2 + j
                best_d = d
    k_out[0] = best // m2
    j_out[0] = best % m2


cdef inline void _uplink(Py_ssize_t i1, Py_ssize_t i2,
                         double h3r, double h3i, double h4r, double h4i,
                         double nr, double ni, double spr1, double spr2,
                         const double[:] p1r, const double[:] p1i,
                         const double[:] p2r, const double[:] p2i,
                         double *ydr, double *ydi) noexcept nogil:
    cdef double u1r = spr1 * p1r[i1]
    cdef double u1i = spr1 * p1i[i1]
    cdef double u2r = spr2 * p2r[i2]
    cdef double u2i = spr2 * p2i[i2]
    cdef double v1r = u1r * h3r - u1i * h3i
    cdef double v1i = u1r * h3i + u1i * h3r
    cdef double v2r = u2r * h4r - u2i * h4i
    cdef double v2i = u2r * h4i + u2i * h4r
    ydr[0] = (v1r + v2r) + nr
    ydi[0] = (v1i + v2i) + ni


def simulate_block(const long long[:] sym1, const long long[:] sym2,
                   const double[:, :] h_re, const double[:, :] h_im,
                   const double[:, :] n_re, const double[:, :] n_im,
                   gains,
                   const double[:] p1r, const double[:] p1i,
                   const double[:] p2r, const double[:] p2i,
                   const long long[:, :] err1, const long long[:, :] err2,
                   bint dest_jml, bint genie, bint per_phase):
    cdef double sps, sa1, sa2, gs1, gs2, spr1, spr2
    sps, sa1, sa2, gs1, gs2, spr1, spr2 = gains
    cdef Py_ssize_t t, n = sym1.shape[0]
    cdef Py_ssize_t s1, s2, r1, r2, k, d1, d2
    cdef double tr, ti, hr, hi, yr, yi, ydr, ydi
    cdef double g1r, g1i, g2r, g2i
    cdef long long e2e1 = 0, e2e2 = 0, ph11 = 0, ph12 = 0, ph21 = 0, ph22 = 0

    with nogil:
        for t in range(n):
            s1 = sym1[t]
            s2 = sym2[t]
            tr = sps * (sa1 * p1r[s1] + sa2 * p2r[s2])
            ti = sps * (sa1 * p1i[s1] + sa2 * p2i[s2])

            hr = h_re[0, t]
            hi = h_im[0, t]
            yr = (tr * hr - ti * hi) + n_re[0, t]
            yi = (tr * hi + ti * hr) + n_im[0, t]
            r1 = _nearest(yr, yi, gs1 * hr, gs1 * hi, p1r, p1i)

            hr = h_re[1, t]
            hi = h_im[1, t]
            yr = (tr * hr - ti * hi) + n_re[1, t]
            yi = (tr * hi + ti * hr) + n_im[1, t]
            _sic(yr, yi, gs1 * hr, gs1 * hi, gs2 * hr, gs2 * hi,
                 p1r, p1i, p2r, p2i, &k, &r2)

            ph11 += err1[s1, r1]
            ph12 += err2[s2, r2]

            g1r = spr1 * h_re[2, t]
            g1i = spr1 * h_im[2, t]
            g2r = spr2 * h_re[3, t]
            g2i = spr2 * h_im[3, t]

            if per_phase or genie:
                _uplink(s1, s2, h_re[2, t], h_im[2, t], h_re[3, t], h_im[3, t],
                        n_re[2, t], n_im[2, t], spr1, spr2,
                        p1r, p1i, p2r, p2i, &ydr, &ydi)
                if dest_jml:
                    _jml(ydr, ydi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i, &d1, &d2)
                else:
                    _sic(ydr, ydi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i, &d1, &d2)
                ph21 += err1[s1, d1]
                ph22 += err2[s2, d2]
            if genie:
                continue
            _uplink(r1, r2, h_re[2, t], h_im[2, t], h_re[3, t], h_im[3, t],
                    n_re[2, t], n_im[2, t], spr1, spr2,
                    p1r, p1i, p2r, p2i, &ydr, &ydi)
            if dest_jml:
                _jml(ydr, ydi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i, &d1, &d2)
            else:
                _sic(ydr, ydi, g1r, g1i, g2r, g2i, p1r, p1i, p2r, p2i, &d1, &d2)
            e2e1 += err1[s1, d1]
            e2e2 += err2[s2, d2]

    if genie:
        e2e1, e2e2 = ph21, ph22
    if not per_phase:
        ph21 = ph22 = 0
    return np.array([e2e1, e2e2, ph11, ph12, ph21, ph22], dtype=np.int64)
