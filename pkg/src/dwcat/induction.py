"""Induction of crossed modules along a subgroup inclusion.

For ``H <= G`` an induced module has basis (coset representative, original
basis vector); the action rewrites ``k g_i`` into normal form ``g_j h`` and
lets ``h`` act through the original module, with tau-phases tracking both
rewrites.  The functor carries a lax and an oplax monoidal structure which
differ only by the sign of a gamma-phase on matched cosets, and the point of
this module is that every compatibility between them — Frobenius squares,
braiding, ribbon, separability — can be verified by finite enumeration.

Maps out of induced tensor products are not monomial (cosets can collide to
zero), so alongside :class:`~dwcat.center.MonomialMap` this module has
:class:`SumMap`, a composable wrapper for basis -> formal sum maps.
"""

from __future__ import annotations

from math import lcm

import numpy as np

from .algebras import AlgebraObject
from .center import (
    CocycleData,
    CoherenceError,
    FormalSum,
    MonomialMap,
    MonomialYDModule,
    associator,
    braiding,
    check_module,
    line_module,
    ribbon,
    tensor_module,
)
from .phases import CycloSum, Phase

__all__ = [
    "SumMap",
    "Induction",
    "act_on_sum",
    "check_separable",
    "check_frobenius_squares",
    "check_braided_compatibility",
    "check_unit_laws",
    "check_ribbon_match",
    "check_lax_naturality",
    "verify_induction",
]


def act_on_sum(V: MonomialYDModule, h: int, fs: FormalSum) -> FormalSum:
    """Apply the (bijective) action of ``h`` term by term."""
    return FormalSum(
        {
            int(V.perm[h, k]): c * Phase(int(V.pnum[h, k]), V.modulus)
            for k, c in fs.terms.items()
        }
    )


def _scaled_by(fs: FormalSum, coeff: CycloSum) -> FormalSum:
    return FormalSum({k: coeff * c for k, c in fs.terms.items()})


class SumMap:
    """A linear map between monomial modules, one formal sum per basis key.

    The function is evaluated lazily, so composites and tensors stay cheap
    to build; :meth:`equals` and :meth:`is_morphism` enumerate the source
    basis and reduce coefficients cyclotomically.
    """

    __slots__ = ("src", "dst", "fn")

    def __init__(self, src: MonomialYDModule, dst: MonomialYDModule, fn):
        self.src = src
        self.dst = dst
        self.fn = fn

    @classmethod
    def from_monomial(cls, f: MonomialMap) -> "SumMap":
        def fn(key, f=f):
            return FormalSum.basis(
                int(f.perm[key]), Phase(int(f.pnum[key]), f.modulus)
            )

        return cls(f.src, f.dst, fn)

    @classmethod
    def identity(cls, V: MonomialYDModule) -> "SumMap":
        return cls(V, V, FormalSum.basis)

    def then(self, other: "SumMap") -> "SumMap":
        """self followed by other."""
        if other.src.dim != self.dst.dim:
            raise ValueError("composition dimension mismatch")

        def fn(key):
            out = FormalSum()
            for k, c in self.fn(key).terms.items():
                out = out + _scaled_by(other.fn(k), c)
            return out

        return SumMap(self.src, other.dst, fn)

    def tensor(self, other: "SumMap") -> "SumMap":
        src = tensor_module(self.src, other.src)
        dst = tensor_module(self.dst, other.dst)

        def fn(key):
            x, y = divmod(key, other.src.dim)
            out = {}
            for kx, cx in self.fn(x).terms.items():
                for ky, cy in other.fn(y).terms.items():
                    out[kx * other.dst.dim + ky] = cx * cy
            return FormalSum(out)

        return SumMap(src, dst, fn)

    def equals(self, other: "SumMap") -> bool:
        if self.src.dim != other.src.dim or self.dst.dim != other.dst.dim:
            return False
        return all(self.fn(k) == other.fn(k) for k in range(self.src.dim))

    def is_morphism(self) -> bool:
        """Does the map commute with the two module actions?"""
        for h in range(self.src.data.group.n):
            for key in range(self.src.dim):
                after = _scaled_by(
                    self.fn(int(self.src.perm[h, key])),
                    CycloSum.from_phase(
                        Phase(int(self.src.pnum[h, key]), self.src.modulus)
                    ),
                )
                before = act_on_sum(self.dst, h, self.fn(key))
                if not (after - before).is_zero():
                    return False
        return True


class Induction:
    """The induction functor attached to a subgroup of the cocycle data.

    All coset bookkeeping lives here: ``reps`` are the left-coset
    representatives (identity first), and every action computation goes
    through the single normal-form rewrite in :meth:`coset_split`.  Modules
    to be induced must be built over :attr:`sub_data`.
    """

    __slots__ = (
        "data",
        "sub_data",
        "to_parent",
        "sub_index",
        "reps",
        "rep_index",
        "h_part",
        "r",
    )

    def __init__(self, data: CocycleData, H_elements):
        self.data = data
        H = sorted(int(h) for h in H_elements)
        self.sub_data, self.to_parent = data.restricted(H)
        self.sub_index = {int(x): k for k, x in enumerate(self.to_parent)}
        reps, rep_index, h_part = data.group.coset_decomposition(H)
        self.reps = np.array(reps, dtype=np.int64)
        self.rep_index = rep_index
        self.h_part = h_part
        self.r = len(reps)

    def coset_split(self, g: int) -> tuple[int, int, int]:
        """Normal form ``g = g_j h``: returns (j, ambient h, subgroup h)."""
        j = int(self.rep_index[g])
        h = int(self.h_part[g])
        return j, h, self.sub_index[h]

    def ambient_degrees(self, V: MonomialYDModule) -> np.ndarray:
        if V.data is not self.sub_data:
            raise ValueError("module was not built over this subgroup's data")
        return self.to_parent[V.degree]

    # -- the functor --------------------------------------------------------

    def module(self, V: MonomialYDModule) -> MonomialYDModule:
        """Induce ``V`` up: basis (i, b), degree ``g_i d_b g_i^{-1}``.

        Acting by ``k`` on layer ``i`` rewrites ``k g_i = g_j h`` and costs

            tau(k, g_i)(d_b) - tau(g_j, h)(d_b) + (phase of h on b),

        the unique phase making the tau-composition axiom hold given that
        it holds for ``V`` over the restricted data.
        """
        amb = self.ambient_degrees(V)
        G = self.data.group
        dv = V.dim
        m = lcm(V.modulus, self.data.modulus)
        lg, lv = m // self.data.modulus, m // V.modulus
        degree = G.conj[self.reps[:, None], amb[None, :]].reshape(-1)
        perm = np.empty((G.n, self.r * dv), dtype=np.int64)
        pnum = np.empty((G.n, self.r * dv), dtype=np.int64)
        for k in range(G.n):
            for i in range(self.r):
                gi = int(self.reps[i])
                j, h, hs = self.coset_split(int(G.table[k, gi]))
                gj = int(self.reps[j])
                for b in range(dv):
                    d = int(amb[b])
                    perm[k, i * dv + b] = j * dv + int(V.perm[hs, b])
                    pnum[k, i * dv + b] = (
                        int(self.data.tau[k, gi, d])
                        - int(self.data.tau[gj, h, d])
                    ) * lg + int(V.pnum[hs, b]) * lv
        return MonomialYDModule(self.data, degree, perm, pnum, m)

    def morphism(self, f: MonomialMap) -> MonomialMap:
        """Induce a map layerwise: (i, b) -> f-phase on (i, f(b))."""
        dv, dw = f.src.dim, f.dst.dim
        perm = (np.arange(self.r)[:, None] * dw + f.perm[None, :]).reshape(-1)
        pnum = np.broadcast_to(f.pnum, (self.r, dv)).reshape(-1)
        return MonomialMap(
            self.module(f.src), self.module(f.dst), perm, pnum, f.modulus
        )

    # -- monoidal structure -------------------------------------------------

    def lax_mult(self, V: MonomialYDModule, W: MonomialYDModule) -> SumMap:
        """I(V) (x) I(W) -> I(V (x) W): zero across cosets, else -gamma.

        On a matched coset the layers multiply; the gamma-phase is forced by
        equivariance (the induced tensor action carries gamma at the degree
        of the whole layer, the target at the degrees inside it).
        """
        return self._pairing(V, W, sign=-1)

    def oplax_comult(self, V: MonomialYDModule, W: MonomialYDModule) -> SumMap:
        """I(V (x) W) -> I(V) (x) I(W): the same pairing run backwards."""
        return self._pairing(V, W, sign=+1)

    def _pairing(self, V, W, sign: int) -> SumMap:
        IV, IW = self.module(V), self.module(W)
        dst = self.module(tensor_module(V, W))
        ambV, ambW = self.ambient_degrees(V), self.ambient_degrees(W)
        dv, dw = V.dim, W.dim
        M = self.data.modulus

        def forward(key):
            x, y = divmod(key, IW.dim)
            i, b = divmod(x, dv)
            j, c = divmod(y, dw)
            if i != j:
                return FormalSum()
            num = sign * int(
                self.data.gamma[self.reps[i], ambV[b], ambW[c]]
            )
            return FormalSum.basis(i * dv * dw + b * dw + c, Phase(num, M))

        def backward(key):
            i, bc = divmod(key, dv * dw)
            b, c = divmod(bc, dw)
            num = sign * int(
                self.data.gamma[self.reps[i], ambV[b], ambW[c]]
            )
            return FormalSum.basis(
                (i * dv + b) * IW.dim + (i * dw + c), Phase(num, M)
            )

        if sign < 0:
            return SumMap(tensor_module(IV, IW), dst, forward)
        return SumMap(dst, tensor_module(IV, IW), backward)

    def unit_line(self) -> MonomialYDModule:
        return line_module(
            self.data, 0, np.zeros(self.data.group.n, dtype=np.int64), 1
        )

    def sub_unit_line(self) -> MonomialYDModule:
        return line_module(
            self.sub_data, 0, np.zeros(self.sub_data.group.n, dtype=np.int64), 1
        )

    def lax_unit(self) -> SumMap:
        """1 -> I(1): the sum of all cosets."""
        I1 = self.module(self.sub_unit_line())
        total = FormalSum({i: CycloSum.one() for i in range(self.r)})
        return SumMap(self.unit_line(), I1, lambda key: total)

    def oplax_counit(self) -> SumMap:
        """I(1) -> 1: every coset maps to 1 (integration, not projection)."""
        I1 = self.module(self.sub_unit_line())
        return SumMap(I1, self.unit_line(), lambda key: FormalSum.basis(0))

    # -- algebras -----------------------------------------------------------

    def algebra(self, B: AlgebraObject) -> AlgebraObject:
        """Push a Frobenius algebra through the functor.

        Multiplication is I(m) after the lax pairing, comultiplication the
        oplax pairing after I(Delta); unit and counit compose with the
        all-cosets maps, which multiplies the counit loop by the index.
        """
        VB = B.module
        module = self.module(VB)
        amb = self.ambient_degrees(VB)
        d, r = VB.dim, self.r
        m = lcm(B.modulus, self.data.modulus)
        lb, lg = m // B.modulus, m // self.data.modulus
        mult_target = np.full((r * d, r * d), -1, dtype=np.int64)
        mult_pnum = np.zeros((r * d, r * d), dtype=np.int64)
        comult: list[list[tuple[int, int, int]]] = []
        for i in range(r):
            g = int(self.reps[i])
            for a in range(d):
                for b in range(d):
                    t = int(B.mult_target[a, b])
                    if t < 0:
                        continue
                    mult_target[i * d + a, i * d + b] = i * d + t
                    mult_pnum[i * d + a, i * d + b] = (
                        int(B.mult_pnum[a, b]) * lb
                        - int(self.data.gamma[g, amb[a], amb[b]]) * lg
                    )
            for a in range(d):
                comult.append(
                    [
                        (
                            i * d + b,
                            i * d + c,
                            (
                                num * lb
                                + int(self.data.gamma[g, amb[b], amb[c]]) * lg
                            )
                            % m,
                        )
                        for b, c, num in B.comult[a]
                    ]
                )
        unit = [(i * d + a, num * lb) for i in range(r) for a, num in B.unit]
        return AlgebraObject(
            module,
            mult_target,
            mult_pnum,
            comult,
            unit,
            np.tile(B.counit_num * lb, r),
            np.tile(B.counit_mask, r),
            m,
            beta_mult=B.beta_mult,
            beta_counit=B.beta_counit * r,
            label=f"induced {B.label}" if B.label else "induced algebra",
        )


# ---------------------------------------------------------------------------
# checks


def _matched_projector(ind: Induction, V, W) -> SumMap:
    IV, IW = ind.module(V), ind.module(W)
    src = tensor_module(IV, IW)
    dv = V.dim

    def fn(key):
        x, y = divmod(key, IW.dim)
        if x // dv != y // W.dim:
            return FormalSum()
        return FormalSum.basis(key)

    return SumMap(src, src, fn)


def check_separable(ind: Induction, V, W) -> None:
    """nu then mu is the identity; mu then nu the matched-coset projector.

    The first is separability of the functor; the second identifies
    I(V (x) W) with the matched-coset part of I(V) (x) I(W), which is the
    quotient the relative tensor product would take.
    """
    mu, nu = ind.lax_mult(V, W), ind.oplax_comult(V, W)
    if not mu.is_morphism():
        raise CoherenceError("lax pairing is not equivariant")
    if not nu.is_morphism():
        raise CoherenceError("oplax pairing is not equivariant")
    if not nu.then(mu).equals(SumMap.identity(mu.dst)):
        raise CoherenceError("pairing composite is not the identity")
    if not mu.then(nu).equals(_matched_projector(ind, V, W)):
        raise CoherenceError("reverse composite is not the coset projector")


def check_frobenius_squares(ind: Induction, X, Y, Z) -> None:
    """Lax and oplax associativity plus the two mixed Frobenius squares."""
    IX, IY, IZ = ind.module(X), ind.module(Y), ind.module(Z)
    XY, YZ = tensor_module(X, Y), tensor_module(Y, Z)
    idX = SumMap.identity(IX)
    idZ = SumMap.identity(IZ)
    alpha = SumMap.from_monomial(associator(IX, IY, IZ))
    alpha_inv = SumMap.from_monomial(associator(IX, IY, IZ).inverse())
    sub_alpha = associator(X, Y, Z)
    Ialpha = SumMap.from_monomial(ind.morphism(sub_alpha))
    Ialpha_inv = SumMap.from_monomial(ind.morphism(sub_alpha.inverse()))

    left = (
        ind.lax_mult(X, Y)
        .tensor(idZ)
        .then(ind.lax_mult(XY, Z))
        .then(Ialpha)
    )
    right = (
        alpha.then(idX.tensor(ind.lax_mult(Y, Z))).then(ind.lax_mult(X, YZ))
    )
    if not left.equals(right):
        raise CoherenceError("lax pairing is not associative")

    left = (
        ind.oplax_comult(XY, Z)
        .then(ind.oplax_comult(X, Y).tensor(idZ))
        .then(alpha)
    )
    right = (
        Ialpha.then(ind.oplax_comult(X, YZ)).then(
            idX.tensor(ind.oplax_comult(Y, Z))
        )
    )
    if not left.equals(right):
        raise CoherenceError("oplax pairing is not coassociative")

    left = (
        ind.oplax_comult(X, Y)
        .tensor(idZ)
        .then(alpha)
        .then(idX.tensor(ind.lax_mult(Y, Z)))
    )
    right = (
        ind.lax_mult(XY, Z).then(Ialpha).then(ind.oplax_comult(X, YZ))
    )
    if not left.equals(right):
        raise CoherenceError("first Frobenius square fails")

    left = (
        idX.tensor(ind.oplax_comult(Y, Z))
        .then(alpha_inv)
        .then(ind.lax_mult(X, Y).tensor(idZ))
    )
    right = (
        ind.lax_mult(X, YZ).then(Ialpha_inv).then(ind.oplax_comult(XY, Z))
    )
    if not left.equals(right):
        raise CoherenceError("second Frobenius square fails")


def check_braided_compatibility(ind: Induction, V, W) -> None:
    """Both pairings intertwine the ambient and induced braidings."""
    IV, IW = ind.module(V), ind.module(W)
    c_amb = SumMap.from_monomial(braiding(IV, IW))
    Ic = SumMap.from_monomial(ind.morphism(braiding(V, W)))
    left = c_amb.then(ind.lax_mult(W, V))
    right = ind.lax_mult(V, W).then(Ic)
    if not left.equals(right):
        raise CoherenceError("lax pairing does not intertwine the braidings")
    left = Ic.then(ind.oplax_comult(W, V))
    right = ind.oplax_comult(V, W).then(c_amb)
    if not left.equals(right):
        raise CoherenceError("oplax pairing does not intertwine the braidings")


def check_unit_laws(ind: Induction, V) -> None:
    """Unit and counit laws for both structures, plus the index loop."""
    IV = ind.module(V)
    one_H = ind.sub_unit_line()
    eta, epsilon = ind.lax_unit(), ind.oplax_counit()
    if not eta.is_morphism() or not epsilon.is_morphism():
        raise CoherenceError("unit or counit is not equivariant")

    # tensoring with a one-dimensional trivial factor leaves every table
    # unchanged, so the unitors are identity flattenings
    left_in = tensor_module(eta.src, IV)
    right_in = tensor_module(IV, eta.src)
    lax_left = eta.tensor(SumMap.identity(IV)).then(ind.lax_mult(one_H, V))
    if not lax_left.equals(SumMap(left_in, lax_left.dst, FormalSum.basis)):
        raise CoherenceError("lax left unit law fails")
    lax_right = SumMap.identity(IV).tensor(eta).then(ind.lax_mult(V, one_H))
    if not lax_right.equals(SumMap(right_in, lax_right.dst, FormalSum.basis)):
        raise CoherenceError("lax right unit law fails")

    oplax_left = ind.oplax_comult(one_H, V).then(
        epsilon.tensor(SumMap.identity(IV))
    )
    if not oplax_left.equals(
        SumMap(oplax_left.src, oplax_left.dst, FormalSum.basis)
    ):
        raise CoherenceError("oplax left counit law fails")
    oplax_right = ind.oplax_comult(V, one_H).then(
        SumMap.identity(IV).tensor(epsilon)
    )
    if not oplax_right.equals(
        SumMap(oplax_right.src, oplax_right.dst, FormalSum.basis)
    ):
        raise CoherenceError("oplax right counit law fails")

    loop = eta.then(epsilon).fn(0)
    if loop != FormalSum({0: CycloSum.one() * ind.r}):
        raise CoherenceError("counit of unit is not the subgroup index")


def check_ribbon_match(ind: Induction, V) -> None:
    """The induced ribbon is the ribbon of the induced module."""
    from .center import maps_equal

    if not maps_equal(ribbon(ind.module(V)), ind.morphism(ribbon(V))):
        raise CoherenceError("ribbon does not commute with induction")


def check_lax_naturality(ind: Induction, f: MonomialMap, g: MonomialMap) -> None:
    """The pairings are natural along a pair of subgroup-level maps."""
    If = SumMap.from_monomial(ind.morphism(f))
    Ig = SumMap.from_monomial(ind.morphism(g))
    Ifg = SumMap.from_monomial(ind.morphism(f.tensor(g)))
    left = If.tensor(Ig).then(ind.lax_mult(f.dst, g.dst))
    right = ind.lax_mult(f.src, g.src).then(Ifg)
    if not left.equals(right):
        raise CoherenceError("lax pairing is not natural")
    left = Ifg.then(ind.oplax_comult(f.dst, g.dst))
    right = ind.oplax_comult(f.src, g.src).then(If.tensor(Ig))
    if not left.equals(right):
        raise CoherenceError("oplax pairing is not natural")


def verify_induction(ind: Induction, modules) -> dict[str, str]:
    """Run the whole battery over a list of subgroup-level modules.

    Returns check name -> "ok" or the failure message.  Module axioms and
    ribbon compatibility run per module; pairings over consecutive pairs;
    the Frobenius squares over the first three modules (cyclically padded).
    """
    modules = list(modules)
    if not modules:
        raise ValueError("need at least one module to verify")
    results: dict[str, str] = {}

    def run(name, fn, *args):
        try:
            fn(*args)
        except CoherenceError as exc:
            results[name] = str(exc)
        else:
            results[name] = "ok"

    for a, V in enumerate(modules):
        run(f"module_axioms[{a}]", check_module, ind.module(V))
        run(f"ribbon_match[{a}]", check_ribbon_match, ind, V)
    for a, V in enumerate(modules):
        W = modules[(a + 1) % len(modules)]
        run(f"separable[{a}]", check_separable, ind, V, W)
        run(f"braided[{a}]", check_braided_compatibility, ind, V, W)
        run(f"unit_laws[{a}]", check_unit_laws, ind, V)
    trip = (modules * 3)[:3]
    run("frobenius_squares", check_frobenius_squares, ind, *trip)
    return results
