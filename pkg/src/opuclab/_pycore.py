"""Pure numpy implementation of the hot recurrence kernels.

Every kernel takes the coefficient prefix in compressed form: ``pos`` holds
the strictly increasing indices of the nonzero coefficients below the
horizon ``n`` and ``val`` their values.  Stretches of zero coefficients are
crossed in closed form (a free Szegő step is ``diag(z, 1)``), so the cost of
one evaluation is proportional to the number of nonzero coefficients rather
than to ``n``.

The compiled module ``opuclab._core`` exports the same functions with the
same signatures; :mod:`opuclab._backend` chooses between the two.
"""
import numpy as np

_UNIT_TOL = 1e-12


def _rho(a):
    r = abs(a)
    return np.sqrt((1.0 - r) * (1.0 + r))


def _cexpm1(t):
    """``exp(t) - 1`` for complex arrays without cancellation near 0."""
    x = t.real
    y = t.imag
    em1 = np.expm1(x)
    s = np.sin(0.5 * y)
    re = em1 * np.cos(y) - 2.0 * s * s
    im = (em1 + 1.0) * np.sin(y)
    return re + 1j * im


def geometric_sum(t, m):
    """Return ``sum_{j<m} exp(j*t)`` elementwise for complex logarithms
    ``t``; accurate when ``exp(t)`` is near 1."""
    t = np.asarray(t, dtype=np.complex128)
    if m <= 0:
        return np.zeros_like(t)
    if m == 1:
        return np.ones_like(t)
    out = np.full(t.shape, float(m), dtype=np.complex128)
    out[np.isneginf(t.real)] = 1.0   # ratio 0: only the j = 0 term survives
    nz = (t != 0.0) & ~np.isneginf(t.real)
    if np.any(nz):
        out[nz] = _cexpm1(m * t[nz]) / _cexpm1(t[nz])
    return out


def _step(phi, phid, a, z):
    rho = _rho(a)
    ac = np.conj(a)
    return (z * phi - ac * phid) / rho, (-z * a * phi + phid) / rho


def _dstep(phi, phid, dphi, dphid, a, z):
    rho = _rho(a)
    ac = np.conj(a)
    return ((phi + z * dphi - ac * dphid) / rho,
            (-a * phi - z * a * dphi + dphid) / rho)


def final_state(pos, val, n, z, deriv=False):
    """State after ``n`` steps for every point of the 1-D array ``z``.

    Returns a ``(4, m)`` complex array of rows ``phi, phi_dagger, psi,
    psi_dagger``; with ``deriv`` two more rows hold ``d phi/dz`` and
    ``d phi_dagger/dz``.
    """
    z = np.asarray(z, dtype=np.complex128)
    one = np.ones_like(z)
    phi, phid = one.copy(), one.copy()
    psi, psid = one.copy(), -one
    dphi = np.zeros_like(z)
    dphid = np.zeros_like(z)
    s = 0
    for p, a in zip(pos, val):
        p = int(p)
        if p >= n:
            break
        m = p - s
        if m > 0:
            zm = z ** m
            if deriv:
                dphi = m * z ** (m - 1) * phi + zm * dphi
            phi = zm * phi
            psi = zm * psi
        if deriv:
            dphi, dphid = _dstep(phi, phid, dphi, dphid, a, z)
        phi, phid = _step(phi, phid, a, z)
        psi, psid = _step(psi, psid, a, z)
        s = p + 1
    m = n - s
    if m > 0:
        zm = z ** m
        if deriv:
            dphi = m * z ** (m - 1) * phi + zm * dphi
        phi = zm * phi
        psi = zm * psi
    rows = [phi, phid, psi, psid]
    if deriv:
        rows += [dphi, dphid]
    return np.array(rows)


def lifted_phase(pos, val, n, theta):
    """Continuous argument of ``e^{i theta} phi_n / phi_n^*`` and its
    ``theta``-derivative for every angle of the 1-D array ``theta``.

    One Szegő step maps ``b = z phi_k / phi_k^*`` to ``z (b - conj(a)) /
    (1 - a b)``, whose lift ``Phi -> theta + Phi + 2 arg(1 - conj(a)
    e^{-i Phi})`` needs no branch choice because the last argument has
    positive real part.  The result is therefore monotone in ``theta`` and
    satisfies ``Phi(theta + 2 pi) = Phi(theta) + 2 pi (n + 1)``.
    """
    theta = np.asarray(theta, dtype=float)
    ph = theta.copy()
    d = np.ones_like(theta)
    s = 0
    for p, a in zip(pos, val):
        p = int(p)
        if p >= n:
            break
        m = p - s
        ph = ph + m * theta
        d = d + m
        w = 1.0 - np.conj(a) * np.exp(-1j * ph)
        ph = theta + ph + 2.0 * np.arctan2(w.imag, w.real)
        d = 1.0 + (1.0 - abs(a) ** 2) / (w.real ** 2 + w.imag ** 2) * d
        s = p + 1
    m = n - s
    if m > 0:
        ph = ph + m * theta
        d = d + m
    return ph, d


def kernel_sum(pos, val, n, z, w, logq=None):
    """Christoffel-Darboux sums ``sum_{k<n} phi_k(z) conj(phi_k(w))``.

    ``z`` and ``w`` are 1-D arrays of equal length; pairs are independent.
    ``logq``, when given, is ``log(z * conj(w))`` supplied exactly by the
    caller; free stretches are summed from it instead of from the rounded
    product.
    """
    z = np.asarray(z, dtype=np.complex128)
    w = np.asarray(w, dtype=np.complex128)
    if logq is None:
        with np.errstate(divide="ignore"):
            q = np.log(z * np.conj(w))
    else:
        q = np.asarray(logq, dtype=np.complex128)
    pz, pzd = np.ones_like(z), np.ones_like(z)
    pw, pwd = np.ones_like(w), np.ones_like(w)
    acc = np.zeros_like(z)
    s = 0
    for p, a in zip(pos, val):
        p = int(p)
        if p >= n:
            break
        m = p - s + 1
        acc += pz * np.conj(pw) * geometric_sum(q, m)
        if m > 1:
            pz = z ** (m - 1) * pz
            pw = w ** (m - 1) * pw
        pz, pzd = _step(pz, pzd, a, z)
        pw, pwd = _step(pw, pwd, a, w)
        s = p + 1
    m = n - s
    if m > 0:
        acc += pz * np.conj(pw) * geometric_sum(q, m)
    return acc


def spectral_norm_sq(t00, t01, t10, t11):
    """Squared largest singular value of 2x2 matrices, in closed form."""
    f = (abs(t00) ** 2 + abs(t01) ** 2 + abs(t10) ** 2 + abs(t11) ** 2)
    d = abs(t00 * t11 - t01 * t10)
    disc = np.sqrt(np.maximum((f - 2.0 * d) * (f + 2.0 * d), 0.0))
    return 0.5 * (f + disc)


def _tnorm_sq(phi, phid, psi, psid, frobenius):
    t00 = 0.5 * (phi + psi)
    t01 = 0.5 * (phi - psi)
    t10 = 0.5 * (phid + psid)
    t11 = 0.5 * (phid - psid)
    if frobenius:
        return abs(t00) ** 2 + abs(t01) ** 2 + abs(t10) ** 2 + abs(t11) ** 2
    return spectral_norm_sq(t00, t01, t10, t11)


class _Acc:
    # Neumaier compensated accumulator over arrays; plain sum when disabled
    def __init__(self, shape, compensated):
        self.s = np.zeros(shape)
        self.c = np.zeros(shape)
        self.compensated = compensated

    def add(self, x):
        if not self.compensated:
            self.s = self.s + x
            return
        t = self.s + x
        big = np.abs(self.s) >= np.abs(x)
        self.c = self.c + np.where(big, (self.s - t) + x, (x - t) + self.s)
        self.s = t

    def value(self):
        return self.s + self.c


def norm_sums(pos, val, n, z, frobenius=False, compensated=False):
    """Cumulative sums over ``k < n`` for each point of ``z``.

    Rows of the ``(4, m)`` result: ``sum |phi_k|^2``, ``sum |psi_k|^2``,
    ``sum ||T_k||^2`` and ``sum |phi_dagger_k|^2``.  Free stretches on the
    unit circle contribute constant terms; off the circle they are walked.
    """
    z = np.asarray(z, dtype=np.complex128)
    one = np.ones_like(z)
    phi, phid = one.copy(), one.copy()
    psi, psid = one.copy(), -one
    accs = [_Acc(z.shape, compensated) for _ in range(4)]
    on_circle = np.all(np.abs(np.abs(z) - 1.0) < _UNIT_TOL)

    def add_run(m):
        if m <= 0:
            return
        if on_circle:
            accs[0].add(m * abs(phi) ** 2)
            accs[1].add(m * abs(psi) ** 2)
            accs[2].add(m * _tnorm_sq(phi, phid, psi, psid, frobenius))
            accs[3].add(m * abs(phid) ** 2)
            return
        f, g = phi, psi
        for _ in range(m):
            accs[0].add(abs(f) ** 2)
            accs[1].add(abs(g) ** 2)
            accs[2].add(_tnorm_sq(f, phid, g, psid, frobenius))
            accs[3].add(abs(phid) ** 2)
            f = z * f
            g = z * g

    s = 0
    for p, a in zip(pos, val):
        p = int(p)
        if p >= n:
            break
        m = p - s + 1
        add_run(m)
        if m > 1:
            zm = z ** (m - 1)
            phi = zm * phi
            psi = zm * psi
        phi, phid = _step(phi, phid, a, z)
        psi, psid = _step(psi, psid, a, z)
        s = p + 1
    add_run(n - s)
    return np.array([acc.value() for acc in accs])


def trajectory(pos, val, n, z):
    """Dense values ``phi_k, phi_dagger_k, psi_k, psi_dagger_k`` for
    ``k = 0..n`` at the scalar point ``z``; shape ``(4, n + 1)``."""
    z = complex(z)
    out = np.empty((4, n + 1), dtype=np.complex128)
    alpha = np.zeros(n, dtype=np.complex128)
    pos = np.asarray(pos, dtype=np.int64)
    keep = pos < n
    alpha[pos[keep]] = np.asarray(val, dtype=np.complex128)[keep]
    phi, phid, psi, psid = 1.0 + 0j, 1.0 + 0j, 1.0 + 0j, -1.0 + 0j
    out[:, 0] = (phi, phid, psi, psid)
    for k in range(n):
        a = alpha[k]
        if a == 0:
            phi, psi = z * phi, z * psi
        else:
            rho = _rho(a)
            ac = a.conjugate()
            phi, phid = (z * phi - ac * phid) / rho, (-z * a * phi + phid) / rho
            psi, psid = (z * psi - ac * psid) / rho, (-z * a * psi + psid) / rho
        out[:, k + 1] = (phi, phid, psi, psid)
    return out
