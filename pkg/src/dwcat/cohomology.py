"""Group cochains valued in Q/Z, bar differentials, and cohomology.

A cochain of arity n on G is stored as a dense int64 table of phase
numerators over a common denominator (the *modulus*): the entry at
(g_1, ..., g_n) is the numerator of the phase value in (1/M)Z/Z.  With
phases written additively, the bar differential with trivial coefficients
is

    (df)(g_0,...,g_n) = (-1)^{n+1} f(g_1,...,g_n)
                        + sum_{i=0}^{n-1} (-1)^{n-i} f(...,g_i g_{i+1},...)
                        + f(g_0,...,g_{n-1}),

so for arity 3 the cocycle condition df = 0 is the usual pentagon-type
identity w(b,c,d) - w(ab,c,d) + w(a,bc,d) - w(a,b,cd) + w(a,b,c) = 0.

Cohomology with coefficients in the M-th roots of unity is computed on the
normalized subcomplex (cochains vanishing when any argument is the
identity), one prime power of M at a time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import lcm, prod

import numpy as np

from . import _kernels as kernels
from .groups import FiniteGroup, dihedral_decode, dihedral_group, symmetric_residue
from .linalg import (
    AffineSolutionSet,
    _coordinates_from_elimination,
    _crt_idempotents,
    _kernel_from_elimination,
    eliminate_mod_prime_power,
    factor_prime_powers,
    merge_invariant_factors,
    quotient_mod_prime_power,
    solve_affine_mod,
)
from .phases import Phase


class CochainFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CocycleCheck:
    ok: bool
    violations: int
    first: tuple[int, ...] | None


class Cochain:
    """A map G^arity -> (1/modulus)Z/Z as a dense numerator table."""

    def __init__(self, group: FiniteGroup, arity: int, modulus: int, values=None):
        if arity < 0:
            raise ValueError("arity must be >= 0")
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.group = group
        self.arity = int(arity)
        self.modulus = int(modulus)
        shape = (group.n,) * arity
        if values is None:
            self.values = np.zeros(shape, dtype=np.int64)
        else:
            values = np.asarray(values, dtype=np.int64) % modulus
            if values.shape != shape:
                values = values.reshape(shape)
            self.values = values

    # -- access -------------------------------------------------------------

    def phase(self, *args) -> Phase:
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments")
        return Phase(int(self.values[args]), self.modulus)

    def is_normalized(self) -> bool:
        """True if the value vanishes whenever an argument is the identity."""
        for axis in range(self.arity):
            sl = [slice(None)] * self.arity
            sl[axis] = 0
            if np.any(self.values[tuple(sl)]):
                return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        if self.group.n != other.group.n or self.arity != other.arity:
            return False
        M = lcm(self.modulus, other.modulus)
        return bool(
            np.array_equal(
                self.values * (M // self.modulus) % M,
                other.values * (M // other.modulus) % M,
            )
        )

    def __hash__(self):
        raise TypeError("Cochain is unhashable")

    # -- arithmetic ---------------------------------------------------------

    def _lifted_pair(self, other: "Cochain"):
        if self.group is not other.group and self.group.n != other.group.n:
            raise ValueError("cochains on different groups")
        if self.arity != other.arity:
            raise ValueError("cochains of different arity")
        M = lcm(self.modulus, other.modulus)
        return M, self.values * (M // self.modulus), other.values * (M // other.modulus)

    def __add__(self, other: "Cochain") -> "Cochain":
        M, a, b = self._lifted_pair(other)
        return Cochain(self.group, self.arity, M, (a + b) % M)

    def __sub__(self, other: "Cochain") -> "Cochain":
        M, a, b = self._lifted_pair(other)
        return Cochain(self.group, self.arity, M, (a - b) % M)

    def __neg__(self) -> "Cochain":
        return Cochain(self.group, self.arity, self.modulus, (-self.values) % self.modulus)

    def __mul__(self, k: int) -> "Cochain":
        return Cochain(self.group, self.arity, self.modulus, (self.values * int(k)) % self.modulus)

    __rmul__ = __mul__

    def with_modulus(self, M: int) -> "Cochain":
        if M % self.modulus:
            raise ValueError(f"{M} is not a multiple of the current modulus {self.modulus}")
        return Cochain(self.group, self.arity, M, self.values * (M // self.modulus))

    # -- differential and cocycle check ------------------------------------

    def differential(self) -> "Cochain":
        vals = bar_differential_values(self.values, self.group.table, self.modulus)
        return Cochain(self.group, self.arity + 1, self.modulus, vals)

    def check_cocycle(self) -> CocycleCheck:
        if self.arity == 3:
            count, first = kernels.cocycle_defects(self.values, self.group.table, self.modulus)
        else:
            d = self.differential().values
            flat = d.ravel()
            count = int(np.count_nonzero(flat))
            first = int(np.argmax(flat != 0)) if count else -1
        tup = (
            tuple(int(x) for x in np.unravel_index(first, (self.group.n,) * (self.arity + 1)))
            if count
            else None
        )
        return CocycleCheck(ok=(count == 0), violations=count, first=tup)

    # -- restriction --------------------------------------------------------

    def restricted_to(self, sub_elements, subgroup: FiniteGroup) -> "Cochain":
        """Restrict along a subgroup given by its sorted ambient indices."""
        S = np.asarray(sub_elements, dtype=np.int64)
        if len(S) != subgroup.n:
            raise ValueError("subgroup size mismatch")
        vals = self.values[np.ix_(*([S] * self.arity))] if self.arity else self.values
        return Cochain(subgroup, self.arity, self.modulus, vals)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "kind": "cochain",
            "group_order": self.group.n,
            "arity": self.arity,
            "modulus": self.modulus,
            "values": [int(v) for v in self.values.ravel()],
        }

    @classmethod
    def from_json_dict(cls, data: dict, group: FiniteGroup) -> "Cochain":
        if not isinstance(data, dict):
            raise CochainFormatError("cochain JSON must be an object")
        try:
            arity = int(data["arity"])
            modulus = int(data["modulus"])
            raw = data["values"]
        except (KeyError, TypeError, ValueError) as exc:
            raise CochainFormatError(f"bad cochain JSON: {exc}") from exc
        if data.get("group_order") not in (None, group.n):
            raise CochainFormatError(
                f"cochain is for a group of order {data.get('group_order')}, got {group.n}"
            )
        need = group.n**arity
        if not isinstance(raw, list) or len(raw) != need:
            raise CochainFormatError(f"expected {need} values")
        vals = []
        for v in raw:
            if isinstance(v, str):
                vals.append(Phase.parse(v).scaled_num(modulus))
            elif isinstance(v, int):
                vals.append(v)
            else:
                raise CochainFormatError(f"bad value {v!r}")
        return cls(group, arity, modulus, np.array(vals, dtype=np.int64))

    def __repr__(self):
        return f"Cochain(group={self.group.name}, arity={self.arity}, modulus={self.modulus})"


# ---------------------------------------------------------------------------
# differentials
# ---------------------------------------------------------------------------


def bar_differential_values(T: np.ndarray, mul: np.ndarray, M: int) -> np.ndarray:
    """Dense bar differential of an arity-n table; returns arity n+1."""
    n = T.ndim
    g = mul.shape[0]
    if n == 0:
        # with trivial coefficients the two boundary terms of a constant cancel
        return np.zeros((g,), dtype=np.int64)
    grids = np.indices((g,) * (n + 1))
    total = np.zeros((g,) * (n + 1), dtype=np.int64)
    sign = -1 if (n + 1) % 2 else 1
    total += sign * T[tuple(grids[1:])]
    for i in range(n):
        idx = [grids[j] for j in range(n + 1) if j != i + 1]
        idx[i] = mul[grids[i], grids[i + 1]]
        s = -1 if (n - i) % 2 else 1
        total += s * T[tuple(idx)]
    total += T[tuple(grids[:n])]
    return total % M


def differential_matrix(G: FiniteGroup, arity: int) -> np.ndarray:
    """Matrix of the bar differential on normalized cochains.

    Rows are indexed by (arity+1)-tuples of non-identity elements, columns
    by arity-tuples, both in row-major order with the identity stripped.
    """
    g, n = G.n, arity
    nz = g - 1
    if n == 0:
        # constants have zero differential (trivial coefficients)
        return np.zeros((nz, 0), dtype=np.int64)

    def col_index(t):
        idx = 0
        for x in t:
            if x == 0:
                return None
            idx = idx * nz + (x - 1)
        return idx

    A = np.zeros((nz ** (n + 1), nz**n), dtype=np.int64)
    sign_first = -1 if (n + 1) % 2 else 1
    for r, tup in enumerate(itertools.product(range(1, g), repeat=n + 1)):
        c = col_index(tup[1:])
        if c is not None:
            A[r, c] += sign_first
        for i in range(n):
            merged = tup[:i] + (G.mul(tup[i], tup[i + 1]),) + tup[i + 2 :]
            c = col_index(merged)
            if c is not None:
                A[r, c] += -1 if (n - i) % 2 else 1
        c = col_index(tup[:n])
        if c is not None:
            A[r, c] += 1
    return A


def _normalized_vector(ch: Cochain) -> np.ndarray:
    """Values of a normalized cochain at non-identity tuples, row-major."""
    g, n = ch.group.n, ch.arity
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    sl = tuple([slice(1, None)] * n)
    return ch.values[sl].ravel()


def _cochain_from_vector(G: FiniteGroup, arity: int, M: int, vec) -> Cochain:
    g = G.n
    vals = np.zeros((g,) * arity, dtype=np.int64)
    if arity:
        sl = tuple([slice(1, None)] * arity)
        vals[sl] = np.asarray(vec, dtype=np.int64).reshape((g - 1,) * arity) % M
    return Cochain(G, arity, M, vals)


def coboundary_solutions(target: Cochain) -> AffineSolutionSet:
    """All normalized (arity-1)-cochains x with dx = target, over mu_M.

    The solution set is empty exactly when the (normalized) class of the
    target is nontrivial in degree-arity cohomology with mu_M coefficients.
    """
    if not target.is_normalized():
        raise ValueError("target cochain must be normalized")
    if target.arity < 1:
        raise ValueError("target must have arity >= 1")
    A = differential_matrix(target.group, target.arity - 1)
    b = _normalized_vector(target)
    return solve_affine_mod(A, b, target.modulus)


def cochain_from_solution(G: FiniteGroup, arity: int, M: int, vec) -> Cochain:
    """Materialize a solver vector (normalized coordinates) as a Cochain."""
    return _cochain_from_vector(G, arity, M, vec)


# ---------------------------------------------------------------------------
# cohomology groups
# ---------------------------------------------------------------------------


@dataclass
class CohomologyGroup:
    """H^degree(G, mu_modulus) as invariant factors plus generator cocycles."""

    group: FiniteGroup
    degree: int
    modulus: int
    invariant_factors: tuple[int, ...]
    generators: list[Cochain]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors, start=1)

    def class_representatives(self, limit: int | None = 10000):
        """One cocycle per cohomology class (the zero class included)."""
        if limit is not None and self.order > limit:
            raise ValueError(f"too many classes ({self.order})")
        for ts in itertools.product(*(range(f) for f in self.invariant_factors)):
            ch = Cochain(self.group, self.degree, self.modulus)
            for t, gen in zip(ts, self.generators):
                if t:
                    ch = ch + t * gen
            yield ch

    def __repr__(self):
        return (
            f"CohomologyGroup(H^{self.degree}({self.group.name}, mu_{self.modulus}) "
            f"= {' x '.join(f'Z/{f}' for f in self.invariant_factors) or '0'})"
        )


def cohomology_group(G: FiniteGroup, degree: int, modulus: int) -> CohomologyGroup:
    """Compute H^degree(G, mu_modulus) on the normalized bar complex.

    >>> from dwcat.groups import cyclic_group
    >>> cohomology_group(cyclic_group(3), 3, 9).invariant_factors
    (3,)
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    n = degree
    A_high = differential_matrix(G, n)
    A_low = differential_matrix(G, n - 1)
    per_prime_factors: list[list[int]] = []
    per_prime_vecs: list[list[np.ndarray]] = []
    factors = factor_prime_powers(modulus)
    for p, e, q in factors:
        el = eliminate_mod_prime_power(A_high, p, e, track_cols=True)
        gens, orders = _kernel_from_elimination(el)
        if not gens:
            per_prime_factors.append([])
            per_prime_vecs.append([])
            continue
        coords = np.zeros((A_low.shape[1], len(gens)), dtype=np.int64)
        for j in range(A_low.shape[1]):
            cs = _coordinates_from_elimination(el, A_low[:, j])
            assert cs is not None, "image of d is not in the kernel of d"
            coords[j, :] = cs
        qfactors, lifts = quotient_mod_prime_power(orders, coords, p, e)
        vecs = []
        for t in range(len(qfactors)):
            v = np.zeros(A_high.shape[1], dtype=np.int64)
            for s, gvec in enumerate(gens):
                v = (v + int(lifts[t, s]) * gvec) % q
            vecs.append(v)
        per_prime_factors.append(qfactors)
        per_prime_vecs.append(vecs)

    merged = merge_invariant_factors(per_prime_factors)
    L = len(merged)
    qs = [q for (_, _, q) in factors]
    crt = _crt_idempotents(modulus, qs) if qs else []
    gens_out: list[Cochain] = []
    for t in range(L):
        v = np.zeros(A_high.shape[1], dtype=np.int64)
        for (pf, pv), c_q in zip(zip(per_prime_factors, per_prime_vecs), crt):
            off = L - len(pf)
            if t >= off:
                v = (v + c_q * pv[t - off]) % modulus
        gens_out.append(_cochain_from_vector(G, n, modulus, v))
    return CohomologyGroup(
        group=G,
        degree=n,
        modulus=modulus,
        invariant_factors=tuple(merged),
        generators=gens_out,
    )


# ---------------------------------------------------------------------------
# the closed-form 3-cocycles on odd dihedral groups
# ---------------------------------------------------------------------------


def dihedral_omega(m: int, p: int) -> Cochain:
    """The p-th 3-cocycle on the dihedral group of the (2m+1)-gon.

    Writing elements as s^{a0} r^{a1} with the rotation exponent reduced
    into {-m..m}, the value at (a, b, c) is

        p * (-1)^{b0+c0} * a1 * l / (2m+1)  +  p * a0 b0 c0 / 2,

    where l in {-1, 0, 1} is the carry of [(-1)^{c0} b1 + c1] into the
    symmetric window.  The classes of p = 0 .. 4m+1 exhaust the cyclic
    third cohomology of the group.

    >>> w = dihedral_omega(1, 1)
    >>> w.phase(1, 1, 1)       # r, r, r
    Phase(1, 3)
    >>> w.phase(3, 3, 3)       # s, s, s
    Phase(1, 2)
    """
    G = dihedral_group(m)
    n = 2 * m + 1
    M = 2 * n
    vals = np.zeros((G.n, G.n, G.n), dtype=np.int64)
    dec = [dihedral_decode(m, i) for i in range(G.n)]
    for i, (a0, a1) in enumerate(dec):
        for j, (b0, b1) in enumerate(dec):
            for k, (c0, c1) in enumerate(dec):
                u = (b1 if c0 == 0 else -b1) + c1
                l = (u - symmetric_residue(u, n)) // n
                term = p * (1 if (b0 + c0) % 2 == 0 else -1) * a1 * l * 2
                term += p * a0 * b0 * c0 * n
                vals[i, j, k] = term % M
    return Cochain(G, 3, M, vals)
