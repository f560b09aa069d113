"""Finite groups given by explicit multiplication tables.

The identity must sit at index 0; everything downstream (normalized
cochains, coset decompositions, subgroup relabelings) relies on that
convention.  Presets cover the groups used most: cyclic groups, odd
dihedral groups and direct products.
"""

from __future__ import annotations

import json
from functools import lru_cache

import numpy as np


class GroupFormatError(ValueError):
    """Raised when input data does not describe a valid group table."""


class FiniteGroup:
    """A finite group as a multiplication table ``table[a, b] = a*b``.

    >>> G = cyclic_group(4)
    >>> G.mul(3, 2), G.inverse(3)
    (1, 1)
    >>> G.order_of(2)
    2
    """

    def __init__(self, table, names=None, name: str = ""):
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupFormatError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise GroupFormatError("empty multiplication table")
        if table.min() < 0 or table.max() >= n:
            raise GroupFormatError("table entries out of range")
        if not (np.array_equal(table[0], np.arange(n)) and np.array_equal(table[:, 0], np.arange(n))):
            raise GroupFormatError("identity must be the element at index 0")
        # each row and column a permutation <=> cancellation laws
        for axis in (0, 1):
            if not np.all(np.sort(table, axis=axis) == np.arange(n).reshape((1, -1) if axis == 1 else (-1, 1))):
                raise GroupFormatError("table rows/columns are not permutations")
        # associativity: (ab)c == a(bc) for all triples, vectorized
        left = table[table, :]           # left[a,b,c] = (ab)c
        right = table[:, table]          # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            raise GroupFormatError("multiplication table is not associative")
        self.n = int(n)
        self.table = table
        inv = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(table == 0)
        inv[rows] = cols
        self.inv = inv
        self.names = list(names) if names is not None else [f"g{i}" for i in range(n)]
        if len(self.names) != n:
            raise GroupFormatError("wrong number of element names")
        self.name = name or f"G{n}"
        # conj[g, x] = g x g^{-1}
        self.conj = table[table, inv[:, None]]

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, g: int, x: int) -> int:
        """g x g^{-1}."""
        return int(self.conj[g, x])

    def order_of(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {self.n})"

    # -- subgroups ----------------------------------------------------------

    def closure(self, gens) -> tuple[int, ...]:
        """The subgroup generated by ``gens``, as a sorted index tuple."""
        seen = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            x = frontier.pop()
            for g in gens:
                for y in (self.mul(x, g), self.mul(g, x)):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return tuple(sorted(seen))

    def subgroups(self) -> list[tuple[int, ...]]:
        """All subgroups, sorted by (order, elements).

        Closure-BFS over generating sets; fine for the small orders this
        library targets.
        """
        found = {(0,)}
        frontier = [(0,)]
        while frontier:
            S = frontier.pop()
            for g in range(1, self.n):
                if g in S:
                    continue
                T = self.closure(set(S) | {g})
                if T not in found:
                    found.add(T)
                    frontier.append(T)
        return sorted(found, key=lambda s: (len(s), s))

    def is_subgroup(self, S) -> bool:
        S = set(S)
        return 0 in S and all(self.mul(a, b) in S for a in S for b in S)

    def is_normal_in(self, N, H) -> bool:
        N, Nset = list(N), set(N)
        return all(self.conjugate(h, x) in Nset for h in H for x in N)

    def normal_subgroups_of(self, H) -> list[tuple[int, ...]]:
        Hset = set(H)
        sub_subs = [S for S in self.subgroups() if set(S) <= Hset]
        return [S for S in sub_subs if self.is_normal_in(S, H)]

    def coset_decomposition(self, H):
        """Left cosets of the subgroup ``H``.

        Returns ``(reps, rep_index, h_part)`` with ``reps[0] = 0`` and, for
        every g, ``g = reps[rep_index[g]] * h_part[g]`` with ``h_part[g]``
        in H.
        """
        Hlist = sorted(set(H))
        reps = []
        rep_index = np.full(self.n, -1, dtype=np.int64)
        h_part = np.full(self.n, -1, dtype=np.int64)
        for g in range(self.n):
            if rep_index[g] >= 0:
                continue
            i = len(reps)
            reps.append(g)
            for h in Hlist:
                x = self.mul(g, h)
                rep_index[x] = i
                h_part[x] = h
        return reps, rep_index, h_part

    def subgroup_group(self, S):
        """The subgroup ``S`` as a standalone FiniteGroup.

        Returns ``(K, to_parent)`` where ``to_parent[i]`` is the ambient
        index of the i-th element of K.  ``S`` must be a subgroup; it is
        sorted, so identity stays at index 0.
        """
        S = sorted(set(S))
        if not self.is_subgroup(S):
            raise GroupFormatError(f"{S} is not a subgroup")
        pos = {g: i for i, g in enumerate(S)}
        k = len(S)
        table = np.empty((k, k), dtype=np.int64)
        for i, a in enumerate(S):
            for j, b in enumerate(S):
                table[i, j] = pos[self.mul(a, b)]
        K = FiniteGroup(
            table,
            names=[self.names[g] for g in S],
            name=f"{self.name}|{{{','.join(self.names[g] for g in S)}}}" if k <= 6 else f"{self.name}|sub{k}",
        )
        return K, np.array(S, dtype=np.int64)

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "names": list(self.names),
            "order": self.n,
            "table": self.table.tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FiniteGroup":
        if not isinstance(data, dict):
            raise GroupFormatError("group JSON must be an object")
        if "preset" in data:
            try:
                if data["preset"] == "cyclic":
                    return cyclic_group(int(data["n"]))
                if data["preset"] == "dihedral_odd":
                    return dihedral_group(int(data["m"]))
                if data["preset"] == "product":
                    factors = [cls.from_json_dict(f) for f in data["factors"]]
                    if not factors:
                        return trivial_group()
                    out = factors[0]
                    for f in factors[1:]:
                        out = direct_product(out, f)
                    return out
            except (KeyError, TypeError, ValueError) as exc:
                raise GroupFormatError(f"bad group preset: {exc}") from exc
            raise GroupFormatError(f"unknown group preset {data['preset']!r}")
        if "table" not in data:
            raise GroupFormatError(
                "group JSON must carry a 'table' or a 'preset'"
            )
        try:
            return cls(data["table"], names=data.get("names"), name=data.get("name", ""))
        except (TypeError, ValueError) as exc:
            raise GroupFormatError(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> "FiniteGroup":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GroupFormatError(f"invalid JSON: {exc}") from exc
        return cls.from_json_dict(data)


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def cyclic_group(n: int) -> FiniteGroup:
    """Z_n with elements 0..n-1 and addition mod n."""
    if n < 1:
        raise ValueError("n must be positive")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    names = ["e"] + [f"x^{k}" if k > 1 else "x" for k in range(1, n)]
    return FiniteGroup(table, names=names, name=f"Z{n}")


@lru_cache(maxsize=None)
def dihedral_group(m: int) -> FiniteGroup:
    """The dihedral group of the regular (2m+1)-gon, order 2(2m+1).

    Element i = s^{a} r^{b} has index ``a*(2m+1) + b`` with a in {0,1} and
    b mod 2m+1; the defining relations are r^{2m+1} = s^2 = e and
    s r s = r^{-1}.

    >>> G = dihedral_group(1)   # S_3
    >>> G.n, G.is_abelian
    (6, False)
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    n = 2 * m + 1
    order = 2 * n
    table = np.empty((order, order), dtype=np.int64)
    for a0 in (0, 1):
        for a1 in range(n):
            i = a0 * n + a1
            for b0 in (0, 1):
                for b1 in range(n):
                    j = b0 * n + b1
                    c0 = (a0 + b0) % 2
                    c1 = ((a1 if b0 == 0 else -a1) + b1) % n
                    table[i, j] = c0 * n + c1
    names = []
    for a0 in (0, 1):
        for a1 in range(n):
            base = "s" if a0 else ""
            if a1 == 0:
                names.append(base or "e")
            elif a1 == 1:
                names.append(base + "r" if base else "r")
            else:
                names.append(f"{base}r^{a1}" if base else f"r^{a1}")
    return FiniteGroup(table, names=names, name=f"D{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with index (a, b) -> a*|H| + b."""
    nG, nH = G.n, H.n
    a = np.arange(nG * nH)
    ga, hb = a // nH, a % nH
    table = G.table[ga[:, None], ga[None, :]] * nH + H.table[hb[:, None], hb[None, :]]
    names = [f"({G.names[x]},{H.names[y]})" for x in range(nG) for y in range(nH)]
    return FiniteGroup(table, names=names, name=f"{G.name}x{H.name}")


def trivial_group() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int64), names=["e"], name="1")


# -- dihedral element codec -------------------------------------------------
#
# For the closed-form cocycles on D_{2m+1} the rotation exponent is taken in
# the symmetric window {-m..m}; [u] denotes that representative.


def dihedral_decode(m: int, index: int) -> tuple[int, int]:
    """Index -> (a, [b]) with a in {0,1}, [b] in {-m..m}."""
    n = 2 * m + 1
    a, b = divmod(int(index), n)
    if a not in (0, 1):
        raise ValueError("index out of range")
    if b > m:
        b -= n
    return a, b

def dihedral_encode(m: int, a: int, b: int) -> int:
    """(a, b) -> index; b may be any integer, a any parity."""
    n = 2 * m + 1
    return (a % 2) * n + (b % n)


def symmetric_residue(u: int, n: int) -> int:
    """The representative of u mod n in {-(n-1)/2 .. (n-1)/2} (n odd)."""
    r = u % n
    if r > (n - 1) // 2:
        r -= n
    return r


GROUP_PRESETS = {
    "cyclic": lambda arg: cyclic_group(int(arg)),
    "dihedral": lambda arg: dihedral_group(int(arg)),
    "trivial": lambda arg: trivial_group(),
}


def group_from_spec(spec: str) -> FiniteGroup:
    """Parse 'cyclic:n', 'dihedral:m', 'trivial', or a path to a JSON file."""
    if ":" in spec:
        kind, _, arg = spec.partition(":")
        if kind in GROUP_PRESETS:
            try:
                return GROUP_PRESETS[kind](arg)
            except ValueError as exc:
                raise GroupFormatError(f"bad group preset argument: {exc}") from exc
    if spec == "trivial":
        return trivial_group()
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            return FiniteGroup.from_json(fh.read())
    except OSError as exc:
        raise GroupFormatError(f"cannot read group spec {spec!r}: {exc}") from exc
