# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled recurrence kernels.  Same contracts as ``opuclab._pycore``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, log, sin, cos, expm1, atan, atan2, hypot, fabs, INFINITY

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx a) noexcept nogil:
    return a.real * a.real + a.imag * a.imag


cdef inline cplx cconj(cplx a) noexcept nogil:
    return a.real - 1j * a.imag


cdef inline cplx cpow_int(cplx z, long m) noexcept nogil:
    cdef double r, t, mag
    if m == 0:
        return 1.0
    if m == 1:
        return z
    r = hypot(z.real, z.imag)
    t = atan2(z.imag, z.real)
    mag = exp(m * log(r))
    return mag * cos(m * t) + 1j * (mag * sin(m * t))


cdef inline cplx cexpm1(cplx t) noexcept nogil:
    cdef double em1 = expm1(t.real)
    cdef double s = sin(0.5 * t.imag)
    return (em1 * cos(t.imag) - 2.0 * s * s) + 1j * ((em1 + 1.0) * sin(t.imag))


cdef inline cplx clog(cplx q) noexcept nogil:
    return 0.5 * log(cabs2(q)) + 1j * atan2(q.imag, q.real)


cdef inline cplx geom(cplx t, long m) noexcept nogil:
    # sum_{j<m} exp(j t)
    if m <= 0:
        return 0.0
    if m == 1 or (t.real == 0.0 and t.imag == 0.0):
        return <double>m
    if t.real == -INFINITY:   # ratio 0: only the j = 0 term survives
        return 1.0
    return cexpm1(m * t) / cexpm1(t)


cdef inline double rho_of(cplx a) noexcept nogil:
    cdef double r = sqrt(cabs2(a))
    return sqrt((1.0 - r) * (1.0 + r))


cdef inline double tnorm_sq(cplx phi, cplx phid, cplx psi, cplx psid,
                            bint frobenius) noexcept nogil:
    cdef cplx t00 = 0.5 * (phi + psi)
    cdef cplx t01 = 0.5 * (phi - psi)
    cdef cplx t10 = 0.5 * (phid + psid)
    cdef cplx t11 = 0.5 * (phid - psid)
    cdef double f = cabs2(t00) + cabs2(t01) + cabs2(t10) + cabs2(t11)
    cdef double d, disc
    if frobenius:
        return f
    d = sqrt(cabs2(t00 * t11 - t01 * t10))
    disc = (f - 2.0 * d) * (f + 2.0 * d)
    if disc < 0.0:
        disc = 0.0
    return 0.5 * (f + sqrt(disc))


cdef inline void nadd(double* s, double* c, double x, bint comp) noexcept nogil:
    cdef double t
    if not comp:
        s[0] += x
        return
    t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def _prep(pos, val, z):
    return (np.ascontiguousarray(pos, dtype=np.int64),
            np.ascontiguousarray(val, dtype=np.complex128),
            np.ascontiguousarray(np.atleast_1d(z), dtype=np.complex128))


def final_state(pos, val, long n, z, bint deriv=False):
    cdef const long long[::1] P
    cdef const cplx[::1] V
    cdef const cplx[::1] Z
    P, V, Z = _prep(pos, val, z)
    cdef Py_ssize_t npts = Z.shape[0], nnz = P.shape[0], j, i
    out = np.empty((6 if deriv else 4, npts), dtype=np.complex128)
    cdef cplx[:, ::1] O = out
    cdef cplx zz, phi, phid, psi, psid, dphi, dphid, zm, a, ac, t1, t2
    cdef double rho
    cdef long s, p, m
    with nogil:
        for j in range(npts):
            zz = Z[j]
            phi = 1.0; phid = 1.0; psi = 1.0; psid = -1.0
            dphi = 0.0; dphid = 0.0
            s = 0
            for i in range(nnz):
                p = P[i]
                if p >= n:
                    break
                m = p - s
                if m > 0:
                    zm = cpow_int(zz, m)
                    if deriv:
                        dphi = m * cpow_int(zz, m - 1) * phi + zm * dphi
                    phi = zm * phi
                    psi = zm * psi
                a = V[i]
                ac = cconj(a)
                rho = rho_of(a)
                if deriv:
                    t1 = (phi + zz * dphi - ac * dphid) / rho
                    t2 = (-a * phi - zz * a * dphi + dphid) / rho
                    dphi = t1; dphid = t2
                t1 = (zz * phi - ac * phid) / rho
                t2 = (-zz * a * phi + phid) / rho
                phi = t1; phid = t2
                t1 = (zz * psi - ac * psid) / rho
                t2 = (-zz * a * psi + psid) / rho
                psi = t1; psid = t2
                s = p + 1
            m = n - s
            if m > 0:
                zm = cpow_int(zz, m)
                if deriv:
                    dphi = m * cpow_int(zz, m - 1) * phi + zm * dphi
                phi = zm * phi
                psi = zm * psi
            O[0, j] = phi; O[1, j] = phid; O[2, j] = psi; O[3, j] = psid
            if deriv:
                O[4, j] = dphi; O[5, j] = dphid
    return out


def lifted_phase(pos, val, long n, theta):
    cdef const long long[::1] P = np.ascontiguousarray(pos, dtype=np.int64)
    cdef const cplx[::1] V = np.ascontiguousarray(val, dtype=np.complex128)
    cdef const double[::1] T = np.ascontiguousarray(np.atleast_1d(theta), dtype=np.float64)
    cdef Py_ssize_t npts = T.shape[0], nnz = P.shape[0], j, i
    ph_out = np.empty(npts)
    d_out = np.empty(npts)
    cdef double[::1] PH = ph_out
    cdef double[::1] D = d_out
    cdef double th, ph, d, wr, wi, ar, ai, g, ur, ui, er, ei, cr, ci, q, tr
    cdef long s, p, m
    with nogil:
        for j in range(npts):
            th = T[j]
            ph = th
            d = 1.0
            s = 0
            # u = e^{-i ph} is rotated along instead of recomputed
            er = cos(th)
            ei = -sin(th)
            ur = er
            ui = ei
            for i in range(nnz):
                p = P[i]
                if p >= n:
                    break
                m = p - s
                if m > 0:
                    ph = ph + m * th
                    d = d + m
                    cr = cos(m * th)
                    ci = -sin(m * th)
                    tr = ur * cr - ui * ci
                    ui = ur * ci + ui * cr
                    ur = tr
                ar = V[i].real
                ai = V[i].imag
                # w = 1 - conj(a) u has positive real part, so atan suffices
                wr = 1.0 - (ar * ur + ai * ui)
                wi = ai * ur - ar * ui
                g = atan(wi / wr)
                ph = th + ph + 2.0 * g
                q = wr * wr + wi * wi
                d = 1.0 + (1.0 - (ar * ar + ai * ai)) / q * d
                # u <- e^{-i th} u conj(w)^2 / |w|^2
                cr = (wr * wr - wi * wi) / q
                ci = -2.0 * wr * wi / q
                tr = ur * cr - ui * ci
                ui = ur * ci + ui * cr
                ur = tr
                tr = ur * er - ui * ei
                ui = ur * ei + ui * er
                ur = tr
                q = 0.5 * (3.0 - (ur * ur + ui * ui))
                ur = ur * q
                ui = ui * q
                s = p + 1
            m = n - s
            if m > 0:
                ph = ph + m * th
                d = d + m
            PH[j] = ph
            D[j] = d
    return ph_out, d_out


def kernel_sum(pos, val, long n, z, w, logq=None):
    cdef const long long[::1] P
    cdef const cplx[::1] V
    cdef const cplx[::1] Z
    cdef const cplx[::1] W
    cdef const cplx[::1] LQ
    P, V, Z = _prep(pos, val, z)
    W = np.ascontiguousarray(np.atleast_1d(w), dtype=np.complex128)
    if W.shape[0] != Z.shape[0]:
        raise ValueError("z and w must have equal length")
    cdef bint have_lq = logq is not None
    if have_lq:
        LQ = np.ascontiguousarray(np.atleast_1d(logq), dtype=np.complex128)
    else:
        LQ = np.zeros(1, dtype=np.complex128)
    cdef Py_ssize_t npts = Z.shape[0], nnz = P.shape[0], j, i
    out = np.empty(npts, dtype=np.complex128)
    cdef cplx[::1] O = out
    cdef cplx zz, ww, q, pz, pzd, pw, pwd, acc, a, ac, t1, t2
    cdef double rho
    cdef long s, p, m
    with nogil:
        for j in range(npts):
            zz = Z[j]; ww = W[j]
            if have_lq:
                q = LQ[j]
            else:
                q = clog(zz * cconj(ww))
            pz = 1.0; pzd = 1.0; pw = 1.0; pwd = 1.0
            acc = 0.0
            s = 0
            for i in range(nnz):
                p = P[i]
                if p >= n:
                    break
                m = p - s + 1
                acc = acc + pz * cconj(pw) * geom(q, m)
                if m > 1:
                    pz = cpow_int(zz, m - 1) * pz
                    pw = cpow_int(ww, m - 1) * pw
                a = V[i]
                ac = cconj(a)
                rho = rho_of(a)
                t1 = (zz * pz - ac * pzd) / rho
                t2 = (-zz * a * pz + pzd) / rho
                pz = t1; pzd = t2
                t1 = (ww * pw - ac * pwd) / rho
                t2 = (-ww * a * pw + pwd) / rho
                pw = t1; pwd = t2
                s = p + 1
            m = n - s
            if m > 0:
                acc = acc + pz * cconj(pw) * geom(q, m)
            O[j] = acc
    return out


def norm_sums(pos, val, long n, z, bint frobenius=False, bint compensated=False):
    cdef const long long[::1] P
    cdef const cplx[::1] V
    cdef const cplx[::1] Z
    P, V, Z = _prep(pos, val, z)
    cdef Py_ssize_t npts = Z.shape[0], nnz = P.shape[0], j, i, r
    out = np.empty((4, npts), dtype=np.float64)
    cdef double[:, ::1] O = out
    cdef cplx zz, phi, phid, psi, psid, f, g, zm, a, ac, t1, t2
    cdef double rho
    cdef double sa[4]
    cdef double ca[4]
    cdef long s, p, m, k
    cdef bint unit
    with nogil:
        for j in range(npts):
            zz = Z[j]
            unit = fabs(sqrt(cabs2(zz)) - 1.0) < 1e-12
            phi = 1.0; phid = 1.0; psi = 1.0; psid = -1.0
            for r in range(4):
                sa[r] = 0.0
                ca[r] = 0.0
            s = 0
            i = 0
            while True:
                if i < nnz and P[i] < n:
                    p = P[i]
                    m = p - s + 1
                else:
                    p = -1
                    m = n - s
                if m > 0:
                    if unit:
                        nadd(&sa[0], &ca[0], m * cabs2(phi), compensated)
                        nadd(&sa[1], &ca[1], m * cabs2(psi), compensated)
                        nadd(&sa[2], &ca[2], m * tnorm_sq(phi, phid, psi, psid, frobenius), compensated)
                        nadd(&sa[3], &ca[3], m * cabs2(phid), compensated)
                    else:
                        f = phi; g = psi
                        for k in range(m):
                            nadd(&sa[0], &ca[0], cabs2(f), compensated)
                            nadd(&sa[1], &ca[1], cabs2(g), compensated)
                            nadd(&sa[2], &ca[2], tnorm_sq(f, phid, g, psid, frobenius), compensated)
                            nadd(&sa[3], &ca[3], cabs2(phid), compensated)
                            f = zz * f
                            g = zz * g
                if p < 0:
                    break
                if m > 1:
                    zm = cpow_int(zz, m - 1)
                    phi = zm * phi
                    psi = zm * psi
                a = V[i]
                ac = cconj(a)
                rho = rho_of(a)
                t1 = (zz * phi - ac * phid) / rho
                t2 = (-zz * a * phi + phid) / rho
                phi = t1; phid = t2
                t1 = (zz * psi - ac * psid) / rho
                t2 = (-zz * a * psi + psid) / rho
                psi = t1; psid = t2
                s = p + 1
                i += 1
            for r in range(4):
                O[r, j] = sa[r] + ca[r]
    return out


def trajectory(pos, val, long n, z):
    cdef const long long[::1] P
    cdef const cplx[::1] V
    P = np.ascontiguousarray(pos, dtype=np.int64)
    V = np.ascontiguousarray(val, dtype=np.complex128)
    out = np.empty((4, n + 1), dtype=np.complex128)
    cdef cplx[:, ::1] O = out
    cdef cplx zz = complex(z)
    cdef cplx phi = 1.0, phid = 1.0, psi = 1.0, psid = -1.0, a, ac, t1, t2
    cdef double rho
    cdef Py_ssize_t i = 0, nnz = P.shape[0]
    cdef long k
    with nogil:
        O[0, 0] = phi; O[1, 0] = phid; O[2, 0] = psi; O[3, 0] = psid
        for k in range(n):
            if i < nnz and P[i] == k:
                a = V[i]
                i += 1
                ac = cconj(a)
                rho = rho_of(a)
                t1 = (zz * phi - ac * phid) / rho
                t2 = (-zz * a * phi + phid) / rho
                phi = t1; phid = t2
                t1 = (zz * psi - ac * psid) / rho
                t2 = (-zz * a * psi + psid) / rho
                psi = t1; psid = t2
            else:
                phi = zz * phi
                psi = zz * psi
            O[0, k + 1] = phi; O[1, k + 1] = phid
            O[2, k + 1] = psi; O[3, k + 1] = psid
    return out
