"""Right modules over the algebra objects, locality, and de-induction.

A right module here acts by monomial tables, like everything else: basis
vector times algebra basis vector is a phase times a basis vector or zero.
The locality condition — acting after the double braiding is the same as
acting — is what singles out the modules that remember only subgroup data,
and the constructions in this file realize both directions of that:
induced modules become local modules over the coset function algebra, and
the identity-coset component of a local module (cut out by the unit's
orthogonal idempotents) carries a subgroup action that inverts induction
on the nose.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .algebras import AlgebraObject, function_algebra
from .center import (
    CoherenceError,
    FormalSum,
    MonomialYDModule,
    modules_equal,
)
from .induction import Induction
from .phases import Phase

__all__ = [
    "RightModule",
    "check_right_module",
    "is_local",
    "regular_module",
    "induced_free_module",
    "module_over_cosets",
    "unit_idempotents",
    "component_split",
    "extract_component",
    "fpdim_report",
    "verify_local_layer",
]


class RightModule:
    """A monomial right action of an algebra object on a monomial module.

    ``act_target[x, a]`` is the basis index of ``x . e_a`` (-1 for zero)
    and ``act_pnum[x, a]`` its phase numerator against ``modulus``.  The
    axioms are enumerable; :func:`check_right_module` runs them all.
    """

    __slots__ = ("algebra", "module", "act_target", "act_pnum", "modulus")

    def __init__(self, algebra, module, act_target, act_pnum, modulus):
        self.algebra = algebra
        self.module = module
        self.act_target = np.asarray(act_target, dtype=np.int64)
        self.act_pnum = np.asarray(act_pnum, dtype=np.int64) % modulus
        self.modulus = int(modulus)
        shape = (module.dim, algebra.dim)
        if self.act_target.shape != shape or self.act_pnum.shape != shape:
            raise ValueError("action tables have the wrong shape")

    def act_fs(self, x: int, a: int) -> FormalSum:
        t = int(self.act_target[x, a])
        if t < 0:
            return FormalSum()
        return FormalSum.basis(t, Phase(int(self.act_pnum[x, a]), self.modulus))


def check_right_module(M: RightModule) -> None:
    """Unit, associativity against the associator, and equivariance.

    The associativity axiom reads ``(x a) b = omega(d_x, d_a, d_b)^{-1}
    x (ab)`` because the action parenthesizes through ``(M (x) A) (x) A``.
    Raises :class:`~dwcat.center.CoherenceError` on the first failure.
    """
    A, V = M.algebra, M.module
    data = V.data
    G = data.group
    m = lcm(M.modulus, A.modulus, V.modulus, data.modulus)

    for x in range(V.dim):
        total = FormalSum()
        for a, num in A.unit:
            total = total + M.act_fs(x, a).scaled(Phase(num, A.modulus))
        if total != FormalSum.basis(x):
            raise CoherenceError(f"unit does not act as identity on {x}")

    for x in range(V.dim):
        dx = int(V.degree[x])
        for a in range(A.dim):
            da = int(A.module.degree[a])
            for b in range(A.dim):
                db = int(A.module.degree[b])
                left = FormalSum()
                for t, c in M.act_fs(x, a).terms.items():
                    left = left + FormalSum(
                        {k: c * cc for k, cc in M.act_fs(t, b).terms.items()}
                    )
                alpha = Phase(-int(data.omega.values[dx, da, db]), data.modulus)
                right = FormalSum()
                for t, c in A.mult_fs(a, b).terms.items():
                    right = right + FormalSum(
                        {k: c * cc for k, cc in M.act_fs(x, t).terms.items()}
                    )
                if left != right.scaled(alpha):
                    raise CoherenceError(
                        f"action is not associative at x={x}, a={a}, b={b}"
                    )

    for h in range(G.n):
        for x in range(V.dim):
            dx = int(V.degree[x])
            for a in range(A.dim):
                da = int(A.module.degree[a])
                gphase = Phase(int(data.gamma[h, dx, da]), data.modulus)
                hx, ha = int(V.perm[h, x]), int(A.module.perm[h, a])
                after = M.act_fs(hx, ha).scaled(
                    Phase(int(V.pnum[h, x]), V.modulus)
                    + Phase(int(A.module.pnum[h, a]), A.module.modulus)
                    + gphase
                )
                before = FormalSum(
                    {
                        int(V.perm[h, t]): c
                        * Phase(int(V.pnum[h, t]), V.modulus)
                        for t, c in M.act_fs(x, a).terms.items()
                    }
                )
                if after != before:
                    raise CoherenceError(
                        f"action is not equivariant at h={h}, x={x}, a={a}"
                    )


def is_local(M: RightModule) -> bool:
    """Does acting commute with the double braiding?

    Compares ``rho`` with ``rho . c_{A,M} . c_{M,A}`` entrywise: the
    vector braids past the algebra (its degree acts on the algebra), the
    algebra braids back (its new degree acts on the vector), and the two
    action phases accumulate.
    """
    A, V = M.algebra, M.module
    W = A.module
    for x in range(V.dim):
        dx = int(V.degree[x])
        for a in range(A.dim):
            a2 = int(W.perm[dx, a])
            ph = Phase(int(W.pnum[dx, a]), W.modulus)
            da2 = int(W.degree[a2])
            x2 = int(V.perm[da2, x])
            ph = ph + Phase(int(V.pnum[da2, x]), V.modulus)
            if M.act_fs(x2, a2).scaled(ph) != M.act_fs(x, a):
                return False
    return True


# ---------------------------------------------------------------------------
# constructions


def regular_module(A: AlgebraObject) -> RightModule:
    """A acting on itself by multiplication."""
    return RightModule(A, A.module, A.mult_target, A.mult_pnum, A.modulus)


def induced_free_module(
    ind: Induction, V: MonomialYDModule
) -> tuple[RightModule, AlgebraObject]:
    """I(V) over the coset function algebra: layers pair with indicators.

    Returns the module together with the function algebra it acts over.
    """
    F = function_algebra(ind.data, [int(x) for x in ind.to_parent])
    M = ind.module(V)
    dv, r = V.dim, ind.r
    layer = np.arange(M.dim) // dv
    target = np.where(
        layer[:, None] == np.arange(r)[None, :], np.arange(M.dim)[:, None], -1
    )
    pnum = np.zeros((M.dim, r), dtype=np.int64)
    return RightModule(F, M, target, pnum, F.modulus), F


def module_over_cosets(F: AlgebraObject, A: AlgebraObject) -> RightModule:
    """A as a right module over the coset function algebra.

    The embedding sends the j-th indicator to the j-th unit term of A —
    for the coset-twisted algebras that is the identity element of the
    j-th layer — and the action is multiplication through it.  The unit
    terms must be phase-free and match the indicator count.
    """
    if len(A.unit) != F.dim or any(num for _, num in A.unit):
        raise ValueError("unit terms do not line up with the coset indicators")
    cols = [a for a, _ in A.unit]
    return RightModule(
        F, A.module, A.mult_target[:, cols], A.mult_pnum[:, cols], A.modulus
    )


# ---------------------------------------------------------------------------
# decomposition and extraction


def unit_idempotents(A: AlgebraObject) -> list[int]:
    """The unit's support, verified orthogonal, idempotent, and phase-free."""
    idems = []
    for a, num in A.unit:
        if num % A.modulus:
            raise CoherenceError("unit term carries a nontrivial phase")
        idems.append(a)
    for i in idems:
        for j in idems:
            t = int(A.mult_target[i, j])
            num = int(A.mult_pnum[i, j])
            if i == j:
                if t != i or num % A.modulus:
                    raise CoherenceError(f"unit term {i} is not idempotent")
            elif t >= 0:
                raise CoherenceError(f"unit terms {i}, {j} are not orthogonal")
    return idems


def component_split(M: RightModule) -> list[list[int]]:
    """Partition the basis by which unit idempotent acts as the identity.

    Each basis vector must be fixed (phase-free) by exactly one idempotent
    and killed by the rest; the result lists the components in the order
    of the unit terms.
    """
    idems = unit_idempotents(M.algebra)
    comps: list[list[int]] = [[] for _ in idems]
    for x in range(M.module.dim):
        hits = []
        for c, p in enumerate(idems):
            t = int(M.act_target[x, p])
            if t < 0:
                continue
            if t != x or int(M.act_pnum[x, p]) % M.modulus:
                raise CoherenceError(
                    f"idempotent {p} moves basis vector {x}"
                )
            hits.append(c)
        if len(hits) != 1:
            raise CoherenceError(
                f"basis vector {x} lies in {len(hits)} components"
            )
        comps[hits[0]].append(x)
    return comps


def extract_component(M: RightModule, ind: Induction, which: int = 0):
    """Cut out one component and restrict the action to the subgroup.

    With ``which = 0`` (the identity coset, since coset representatives
    start at the identity) this inverts induction: the component of
    ``I(V)`` over the function algebra is ``V`` again, on the nose.  The
    subgroup must preserve the component — it does whenever it stabilizes
    the chosen idempotent, which :class:`CoherenceError` polices.
    """
    basis = component_split(M)[which]
    V = M.module
    pos = {x: k for k, x in enumerate(basis)}
    K = ind.sub_data.group
    degree = np.empty(len(basis), dtype=np.int64)
    for k, x in enumerate(basis):
        d = int(V.degree[x])
        if d not in ind.sub_index:
            raise CoherenceError(
                f"component degree {d} lies outside the subgroup"
            )
        degree[k] = ind.sub_index[d]
    perm = np.empty((K.n, len(basis)), dtype=np.int64)
    pnum = np.empty((K.n, len(basis)), dtype=np.int64)
    for hs in range(K.n):
        h = int(ind.to_parent[hs])
        for k, x in enumerate(basis):
            t = int(V.perm[h, x])
            if t not in pos:
                raise CoherenceError(
                    f"subgroup element {h} moves the component"
                )
            perm[hs, k] = pos[t]
            pnum[hs, k] = int(V.pnum[h, x])
    return MonomialYDModule(ind.sub_data, degree, perm, pnum, V.modulus)


def fpdim_report(G, H_elements, N_elements) -> dict:
    """Exact dimension bookkeeping for the algebra attached to N inside H.

    Returns Fractions: the ambient category's Frobenius-Perron dimension
    ``|G|^2``, the module category's ``|G||H|/|N|``, the local-module
    category's ``|H|^2/|N|^2``, and the algebra dimension ``|G||N|/|H|``
    — together with the consistency flag for ``fpdim_local =
    fpdim_center / dim_algebra^2``.  The trivializing case N = H gives
    local dimension 1.
    """
    from fractions import Fraction

    H = sorted(set(int(x) for x in H_elements))
    N = sorted(set(int(x) for x in N_elements))
    if not G.is_subgroup(H) or not set(N) <= set(H):
        raise ValueError("need N inside a subgroup H of G")
    if not G.is_subgroup(N) or not G.is_normal_in(N, H):
        raise ValueError("N must be a normal subgroup of H")
    g, h, n = G.n, len(H), len(N)
    center = Fraction(g * g)
    rep = Fraction(g * h, n)
    local = Fraction(h * h, n * n)
    dim_algebra = Fraction(g * n, h)
    return {
        "fpdim_center": center,
        "fpdim_rep": rep,
        "fpdim_rep_local": local,
        "dim_algebra": dim_algebra,
        "consistent": local == center / dim_algebra**2,
    }


def verify_local_layer(ind: Induction, V: MonomialYDModule) -> dict[str, str]:
    """Axioms, locality, and the exact roundtrip for one induced module."""
    results: dict[str, str] = {}
    M, _ = induced_free_module(ind, V)
    try:
        check_right_module(M)
        results["right_module_axioms"] = "ok"
    except CoherenceError as exc:
        results["right_module_axioms"] = str(exc)
    results["local"] = "ok" if is_local(M) else "double braiding acts"
    try:
        back = extract_component(M, ind)
        results["roundtrip"] = (
            "ok" if modules_equal(back, V) else "extracted module differs"
        )
    except CoherenceError as exc:
        results["roundtrip"] = str(exc)
    return results
