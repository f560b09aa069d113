"""Reference kernels: vectorized numpy sweeps over cocycle tables.

All tables are dense int64 arrays of phase numerators modulo M; group data
comes in as the multiplication table ``mul``, inverse table ``inv`` and
conjugation table ``conj[g, x] = g x g^{-1}``.  Every scan returns
``(violations, first)`` where ``first`` is the row-major flat index of the
first violating tuple (or -1): identical output to the compiled backend.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def _scan(defect: np.ndarray) -> tuple[int, int]:
    flat = defect.ravel()
    count = int(np.count_nonzero(flat))
    first = int(np.argmax(flat != 0)) if count else -1
    return count, first


def cocycle_defects(omega, mul, M):
    """Violations of the 3-cocycle condition over all quadruples."""
    g = mul.shape[0]
    a = np.arange(g)
    t1 = omega[None, :, :, :]
    t2 = omega[mul][:, :, :, :]                       # w[ab, c, d]
    t3 = omega[a[:, None, None, None], mul[None, :, :, None], a[None, None, None, :]]
    t4 = omega[a[:, None, None, None], a[None, :, None, None], mul[None, None, :, :]]
    t5 = omega[:, :, :, None]
    return _scan((t1 - t2 + t3 - t4 + t5) % M)


def tau_table(omega, mul, inv, conj, M):
    """tau(h,k)(d) = w(h,k,d) + w(hkd(hk)^-1,h,k) - w(h,kdk^-1,k)."""
    g = mul.shape[0]
    a = np.arange(g)
    hk_conj = conj[mul]                               # [h,k,d] = (hk) d (hk)^-1
    h3 = a[:, None, None]
    k3 = a[None, :, None]
    t1 = omega
    t2 = omega[hk_conj, h3, k3]
    t3 = omega[h3, conj[None, :, :], k3]
    return (t1 + t2 - t3) % M


def gamma_table(omega, mul, inv, conj, M):
    """gamma(h)(d,f) = w(h,d,f) + w(hdh^-1,hfh^-1,h) - w(hdh^-1,h,f)."""
    g = mul.shape[0]
    a = np.arange(g)
    h3 = a[:, None, None]
    f3 = a[None, None, :]
    hd = conj[:, :, None]                             # [h,d,(f)] = h d h^-1
    hf = conj[:, None, :]                             # [h,(d),f] = h f h^-1
    t1 = omega
    t2 = omega[hd, hf, h3]
    t3 = omega[hd, h3, f3]
    return (t1 + t2 - t3) % M


def tau_associativity_defects(tau, gamma, omega, mul, inv, conj, M):
    """tau(h,k)(d) tau(g,hk)(d) = tau(gh,k)(d) tau(g,h)(kdk^-1), over (g,h,k,d)."""
    g = mul.shape[0]
    a = np.arange(g)
    g4 = a[:, None, None, None]
    h4 = a[None, :, None, None]
    k4 = a[None, None, :, None]
    d4 = a[None, None, None, :]
    t1 = tau[None, :, :, :]
    t2 = tau[g4, mul[None, :, :, None], d4]
    t3 = tau[mul[:, :, None, None], k4, d4]
    t4 = tau[g4, h4, conj[None, None, :, :]]
    return _scan((t1 + t2 - t3 - t4) % M)


def gamma_multiplicativity_defects(tau, gamma, omega, mul, inv, conj, M):
    """gamma(h)(ab,c) gamma(h)(a,b) / w(hah,hbh,hch) = gamma(h)(a,bc) gamma(h)(b,c) / w(a,b,c)."""
    g = mul.shape[0]
    x = np.arange(g)
    h4 = x[:, None, None, None]
    a4 = x[None, :, None, None]
    b4 = x[None, None, :, None]
    c4 = x[None, None, None, :]
    ha = conj[:, :, None, None]                       # [h,a]
    hb = conj[:, None, :, None]
    hc = conj[:, None, None, :]
    t1 = gamma[h4, mul[None, :, :, None], c4]
    t2 = gamma[h4, a4, b4]
    t3 = omega[ha, hb, hc]
    t4 = gamma[h4, a4, mul[None, None, :, :]]
    t5 = gamma[h4, b4, c4]
    t6 = omega[None, :, :, :]
    return _scan((t1 + t2 - t3 - t4 - t5 + t6) % M)


def gamma_tau_defects(tau, gamma, omega, mul, inv, conj, M):
    """gamma(k)(d,g) gamma(h)(kdk,kgk) tau(h,k)(d) tau(h,k)(g) = tau(h,k)(dg) gamma(hk)(d,g)."""
    g = mul.shape[0]
    x = np.arange(g)
    h4 = x[:, None, None, None]
    k4 = x[None, :, None, None]
    d4 = x[None, None, :, None]
    g4 = x[None, None, None, :]
    kd = conj[None, :, :, None]
    kg = conj[None, :, None, :]
    t1 = gamma[k4, d4, g4]
    t2 = gamma[h4, kd, kg]
    t3 = tau[h4, k4, d4]
    t4 = tau[h4, k4, g4]
    t5 = tau[h4, k4, mul[None, None, :, :]]
    t6 = gamma[mul[:, :, None, None], d4, g4]
    return _scan((t1 + t2 + t3 + t4 - t5 - t6) % M)


def braiding_compatibility_defects(tau, gamma, omega, mul, inv, conj, M):
    """gamma(k)(g,h) tau(kgk^-1,k)(h) = gamma(k)(ghg^-1,g) tau(k,g)(h), over (k,g,h)."""
    n = mul.shape[0]
    x = np.arange(n)
    k3 = x[:, None, None]
    g3 = x[None, :, None]
    h3 = x[None, None, :]
    t1 = gamma
    t2 = tau[conj[:, :, None], k3, h3]                # tau(kgk^-1, k)(h)
    t3 = gamma[k3, conj[None, :, :], g3]              # gamma(k)(ghg^-1, g)
    t4 = tau[k3, g3, h3]
    return _scan((t1 + t2 - t3 - t4) % M)


def inverse_braiding_compatibility_defects(tau, gamma, omega, mul, inv, conj, M):
    """Equivariance of the inverse braiding, as a scalar identity in tau/gamma.

    c^-1(w_h (x) v_g) = -tau(g,g^-1)(h) phase times v_g (x) g^-1.w_h, so
    commuting c^-1 past the k-action on either side forces, over (k, g, h):

        gamma(k)(h,g) - tau(kgk^-1, kg^-1k^-1)(khk^-1) + tau(kg^-1k^-1, k)(h)
          = -tau(g,g^-1)(h) + gamma(k)(g, g^-1 h g) + tau(k, g^-1)(h).

    The two tau(x, x^-1) style terms cancel only when those values vanish
    (e.g. abelian G), which is why shorter forms of this identity that drop
    them hold on cyclic groups but break on dihedral ones.
    """
    n = mul.shape[0]
    x = np.arange(n)
    k3 = x[:, None, None]
    g3 = x[None, :, None]
    h3 = x[None, None, :]
    gi3 = inv[None, :, None]                          # [(k),g,(h)] = g^-1
    kg = conj[:, :, None]                             # [k,g,(h)] = k g k^-1
    kgi = conj[:, inv][:, :, None]                    # [k,g,(h)] = k g^-1 k^-1
    kh = conj[:, None, :]                             # [k,(g),h] = k h k^-1
    gihg = conj[inv, :][None, :, :]                   # [(k),g,h] = g^-1 h g
    t1 = gamma[k3, h3, g3]
    t2 = tau[kg, kgi, kh]
    t3 = tau[kgi, k3, h3]
    t4 = tau[g3, gi3, h3]
    t5 = gamma[k3, g3, gihg]
    t6 = tau[k3, gi3, h3]
    return _scan((t1 - t2 + t3 + t4 - t5 - t6) % M)


def ribbon_defects(tau, gamma, omega, mul, inv, conj, M):
    """gamma(df)(d,f) = tau(dfd^-1,d)(d) tau(d,f)(f), over (d,f)."""
    n = mul.shape[0]
    x = np.arange(n)
    d2 = x[:, None]
    f2 = x[None, :]
    t1 = gamma[mul, d2, f2]
    t2 = tau[conj, d2, d2]                            # tau(d f d^-1, d)(d)
    t3 = tau[d2, f2, f2]
    return _scan((t1 - t2 - t3) % M)
