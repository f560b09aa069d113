"""Exact linear algebra over Z and Z/M.

Two engines live here:

* an integer Smith normal form with full transform tracking (pure Python,
  exact, deterministic pivoting), used as a public operation and for
  presenting finite abelian groups;

* a fast elimination over Z/p^e (numpy) which is the workhorse behind
  ``solve_affine_mod``, kernel computation and quotient structure.  A
  matrix over Z/M is handled one prime power at a time and the results are
  glued back with the Chinese remainder theorem.

Over Z/p^e every nonzero residue factors as unit * p^v, so Gaussian
elimination works verbatim once pivots are chosen by minimal p-valuation;
all divisions below are exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

import numpy as np


# ---------------------------------------------------------------------------
# integer Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """U A V = D with U, V unimodular and D diagonal, d1 | d2 | ... >= 0."""

    U: list
    Uinv: list
    D: list
    V: list
    Vinv: list

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    def invariant_factors(self) -> list[int]:
        return [d for d in self.diagonal if d not in (0, 1)]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat) -> SmithDecomposition:
    """Smith normal form over Z with deterministic pivoting.

    Pivots are chosen as the entry of smallest absolute value (ties broken
    row-major), so the same input always yields the same decomposition.

    >>> s = smith_normal_form([[2, 4], [6, 8]])
    >>> s.diagonal
    [2, 4]
    """
    A = [[int(x) for x in row] for row in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    U, Uinv = _identity(m), _identity(m)
    V, Vinv = _identity(n), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def row_op(i, j, f):
        # R_i -= f R_j
        A[i] = [a - f * b for a, b in zip(A[i], A[j])]
        U[i] = [a - f * b for a, b in zip(U[i], U[j])]
        for r in Uinv:
            r[j] += f * r[i]

    def col_op(j, i, f):
        # C_j -= f C_i
        for r in A:
            r[j] -= f * r[i]
        for r in V:
            r[j] -= f * r[i]
        Vinv[i] = [a + f * b for a, b in zip(Vinv[i], Vinv[j])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    def clear_at(k):
        """Diagonalize position k against rows/cols > k."""
        while True:
            # smallest nonzero |entry| in the cross (col k and row k, >= k)
            best = None
            for i in range(k, m):
                if A[i][k]:
                    cand = (abs(A[i][k]), 0, i)
                    if best is None or cand < best:
                        best = cand
            for j in range(k + 1, n):
                if A[k][j]:
                    cand = (abs(A[k][j]), 1, j)
                    if best is None or cand < best:
                        best = cand
            if best is None:
                return
            _, where, idx = best
            if where == 0 and idx != k:
                swap_rows(k, idx)
            elif where == 1:
                swap_cols(k, idx)
            piv = A[k][k]
            done = True
            for i in range(k + 1, m):
                if A[i][k]:
                    f = A[i][k] // piv
                    if f:
                        row_op(i, k, f)
                    if A[i][k]:
                        done = False
            for j in range(k + 1, n):
                if A[k][j]:
                    f = A[k][j] // piv
                    if f:
                        col_op(j, k, f)
                    if A[k][j]:
                        done = False
            if done:
                return

    r = min(m, n)
    for k in range(r):
        # move the overall minimal |entry| of the remaining block to (k, k)
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j]:
                    cand = (abs(A[i][j]), i, j)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, bi, bj = best
        if bi != k:
            swap_rows(k, bi)
        if bj != k:
            swap_cols(k, bj)
        clear_at(k)
        if A[k][k] < 0:
            negate_row(k)

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            a, b = A[k][k], A[k + 1][k + 1]
            if a and b and b % a:
                # fold d_{k+1} into column k and rediagonalize the 2x2 block
                col_op(k, k + 1, -1)
                clear_at(k)
                if A[k][k] < 0:
                    negate_row(k)
                if A[k + 1][k + 1] < 0:
                    negate_row(k + 1)
                changed = True
    return SmithDecomposition(U=U, Uinv=Uinv, D=A, V=V, Vinv=Vinv)


# ---------------------------------------------------------------------------
# elimination over Z/p^e
# ---------------------------------------------------------------------------


def factor_prime_powers(M: int) -> list[tuple[int, int, int]]:
    """M as [(p, e, p**e)], p ascending.  Trial division; M is small here."""
    if M < 1:
        raise ValueError("modulus must be positive")
    out = []
    p = 2
    while p * p <= M:
        if M % p == 0:
            e = 0
            while M % p == 0:
                M //= p
                e += 1
            out.append((p, e, p**e))
        p += 1
    if M > 1:
        out.append((M, 1, M))
    return out


def _valuations(arr: np.ndarray, p: int, e: int) -> np.ndarray:
    """p-adic valuation of each entry, with 0 mapped to e."""
    vals = np.full(arr.shape, e, dtype=np.int64)
    rem = arr.copy()
    for v in range(e):
        newly = (rem % p != 0) & (vals == e)
        vals[newly] = v
        rem //= p
    return vals


def _row_echelon_mod(A: np.ndarray, p: int, e: int, q: int, b) -> int:
    """In-place row echelon form over Z/q by row operations only.

    Pivots are the minimal-valuation entries of each column (ties: first
    row), so all the divisions are exact.  Returns the number of pivot
    rows; rows at or beyond that index end up identically zero.  Row
    operations are mirrored on ``b`` when given.  The kernel and row space
    are unchanged, which is all the second elimination stage needs.
    """
    m, n = A.shape
    r = 0
    for j in range(n):
        if r >= m:
            break
        col = A[r:, j]
        vmin, rel = e, -1
        pk1 = p
        for v in range(e):
            mask = (col % pk1) != 0
            if mask.any():
                vmin, rel = v, int(np.argmax(mask))
                break
            pk1 *= p
        if vmin >= e:
            continue
        i = r + rel
        if i != r:
            A[[r, i], :] = A[[i, r], :]
            if b is not None:
                b[[r, i]] = b[[i, r]]
        pk = p**vmin
        unit = int(A[r, j]) // pk
        if unit != 1:
            uinv = pow(unit, -1, q)
            A[r, j:] = (A[r, j:] * uinv) % q
            if b is not None:
                b[r] = (b[r] * uinv) % q
        colb = A[r + 1 :, j]
        nz = np.nonzero(colb)[0]
        if nz.size:
            f = (colb[nz] // pk) % q
            rows = r + 1 + nz
            A[rows, j:] = (A[rows, j:] - f[:, None] * A[r, j:]) % q
            if b is not None:
                b[rows] = (b[rows] - f * b[r]) % q
        r += 1
    return r


@dataclass
class _Elimination:
    p: int
    e: int
    q: int
    shape: tuple[int, int]
    pivots: list[int]          # p-valuations of the pivots, nondecreasing
    V: np.ndarray | None       # column transform (A_orig @ V has pivot cols first)
    Vinv: np.ndarray | None
    U: np.ndarray | None
    Uinv: np.ndarray | None
    b: np.ndarray | None       # right-hand side after the row operations


def eliminate_mod_prime_power(
    A, p: int, e: int, b=None, track_cols: bool = True, track_rows: bool = False
) -> _Elimination:
    """Two-sided elimination of A over Z/p^e.

    Brings A to diag(p^c1, p^c2, ...) with c1 <= c2 <= ... via unimodular
    row and column operations; column transforms (and optionally row
    transforms) are tracked, the right-hand side ``b`` follows the row
    operations.
    """
    q = p**e
    A = np.array(A, dtype=np.int64) % q
    m, n = A.shape
    V = np.eye(n, dtype=np.int64) if track_cols else None
    Vinv = np.eye(n, dtype=np.int64) if track_cols else None
    U = np.eye(m, dtype=np.int64) if track_rows else None
    Uinv = np.eye(m, dtype=np.int64) if track_rows else None
    bb = None if b is None else np.array(b, dtype=np.int64) % q
    if not track_rows and m > n + 8:
        # tall systems: compact to the row space first (row ops are not
        # tracked anyway), keeping a witness row for any inconsistency
        r = _row_echelon_mod(A, p, e, q, bb)
        keep = list(range(r))
        if bb is not None:
            bad = np.nonzero(bb[r:] % q)[0]
            if bad.size:
                keep.append(r + int(bad[0]))
            bb = bb[keep]
        A = A[keep]
        m = A.shape[0]
    pivots: list[int] = []
    for k in range(min(m, n)):
        sub = A[k:, k:]
        if not sub.size:
            break
        # staged pivot search: the first v with an entry not divisible by
        # p^{v+1} is the minimal valuation, and such an entry attains it
        vmin, flat = e, -1
        pk1 = p
        for v in range(e):
            mask = (sub % pk1) != 0
            if mask.any():
                vmin, flat = v, int(np.argmax(mask))
                break
            pk1 *= p
        if vmin >= e:
            break
        di, dj = divmod(flat, n - k)
        i, j = k + di, k + dj
        if i != k:
            A[[k, i], :] = A[[i, k], :]
            if bb is not None:
                bb[[k, i]] = bb[[i, k]]
            if track_rows:
                U[[k, i], :] = U[[i, k], :]
                Uinv[:, [k, i]] = Uinv[:, [i, k]]
        if j != k:
            A[:, [k, j]] = A[:, [j, k]]
            if track_cols:
                V[:, [k, j]] = V[:, [j, k]]
                Vinv[[k, j], :] = Vinv[[j, k], :]
        pk = p**vmin
        unit = int(A[k, k]) // pk
        uinv = pow(unit, -1, q)
        A[k, k:] = (A[k, k:] * uinv) % q
        if bb is not None:
            bb[k] = (bb[k] * uinv) % q
        if track_rows:
            U[k, :] = (U[k, :] * uinv) % q
            Uinv[:, k] = (Uinv[:, k] * unit) % q
        # clear the column below the pivot (all valuations >= vmin there)
        col = A[k + 1 :, k]
        nz = np.nonzero(col)[0]
        if nz.size:
            f = (col[nz] // pk) % q
            rows = k + 1 + nz
            A[rows, k:] = (A[rows, k:] - f[:, None] * A[k, k:]) % q
            if bb is not None:
                bb[rows] = (bb[rows] - f * bb[k]) % q
            if track_rows:
                U[rows, :] = (U[rows, :] - f[:, None] * U[k, :]) % q
                Uinv[:, k] = (Uinv[:, k] + Uinv[:, rows] @ f) % q
        # clear the rest of the pivot row; only row k is affected since the
        # pivot column is now zero elsewhere
        row = A[k, k + 1 :]
        nz2 = np.nonzero(row)[0]
        if nz2.size:
            f2 = (row[nz2] // pk) % q
            cols = k + 1 + nz2
            A[k, cols] = 0
            if track_cols:
                V[:, cols] = (V[:, cols] - V[:, k : k + 1] * f2[None, :]) % q
                Vinv[k, :] = (Vinv[k, :] + f2 @ Vinv[cols, :]) % q
        pivots.append(vmin)
    return _Elimination(
        p=p, e=e, q=q, shape=(m, n), pivots=pivots, V=V, Vinv=Vinv, U=U, Uinv=Uinv, b=bb
    )


def _kernel_from_elimination(el: _Elimination) -> tuple[list[np.ndarray], list[int]]:
    """Generators and orders (ascending chain) of ker(A) in (Z/q)^n."""
    p, e, q = el.p, el.e, el.q
    n = el.shape[1]
    gens, orders = [], []
    for i, c in enumerate(el.pivots):
        if c > 0:
            gens.append((el.V[:, i] * p ** (e - c)) % q)
            orders.append(p**c)
    for i in range(len(el.pivots), n):
        gens.append(el.V[:, i].copy())
        orders.append(q)
    return gens, orders


def _particular_from_elimination(el: _Elimination) -> np.ndarray | None:
    """One solution of A x = b over Z/q, or None."""
    p, e, q = el.p, el.e, el.q
    m, n = el.shape
    z = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(el.pivots):
        r = int(el.b[i]) % q
        pk = p**c
        if r % pk:
            return None
        z[i] = r // pk
    for i in range(len(el.pivots), m):
        if int(el.b[i]) % q:
            return None
    return (el.V @ z) % q


def _coordinates_from_elimination(el: _Elimination, y: np.ndarray) -> list[int] | None:
    """Coefficients of y on the kernel generators, or None if y not in ker."""
    p, e, q = el.p, el.e, el.q
    n = el.shape[1]
    z = (el.Vinv @ (np.asarray(y, dtype=np.int64) % q)) % q
    coords = []
    for i, c in enumerate(el.pivots):
        if c == 0:
            if z[i] % q:
                return None
            continue
        step = p ** (e - c)
        if z[i] % step:
            return None
        coords.append(int(z[i] // step) % p**c)
    for i in range(len(el.pivots), n):
        coords.append(int(z[i]) % q)
    return coords


# ---------------------------------------------------------------------------
# affine solution sets over Z/M
# ---------------------------------------------------------------------------


def _crt_idempotents(M: int, qs: list[int]) -> list[int]:
    """c_q = 1 mod q, 0 mod M/q, for pairwise coprime prime powers."""
    out = []
    for q in qs:
        t = M // q
        out.append((t * pow(t, -1, q)) % M if q > 1 else 0)
    return out


class AffineSolutionSet:
    """The set {x : A x = b over Z/M}, as particular + kernel data.

    The kernel generators are independent with orders forming a
    divisibility chain o_1 | o_2 | ... , so every solution is uniquely
    ``particular + sum t_i * gens[i]`` with ``0 <= t_i < o_i``.
    """

    def __init__(self, modulus, n_vars, particular, gens, orders, prime_data):
        self.modulus = int(modulus)
        self.n_vars = int(n_vars)
        self.particular = particular
        self.gens = gens
        self.orders = tuple(int(o) for o in orders)
        self._prime_data = prime_data

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    def cardinality(self) -> int:
        return 0 if self.is_empty else prod(self.orders, start=1)

    def __iter__(self):
        if self.is_empty:
            return
        M = self.modulus
        for ts in itertools.product(*(range(o) for o in self.orders)):
            x = self.particular.copy()
            for t, g in zip(ts, self.gens):
                if t:
                    x = x + t * g
            yield tuple(int(v) for v in (x % M))

    def solution_at(self, ts) -> np.ndarray:
        """The solution with kernel coefficients ``ts``."""
        if self.is_empty:
            raise ValueError("empty solution set")
        x = self.particular.copy()
        for t, g in zip(ts, self.gens):
            x = x + int(t) * g
        return x % self.modulus

    def kernel_coordinates(self, y) -> tuple[int, ...] | None:
        """Write the kernel element y as coefficients on the generators.

        Returns None if y is not in the kernel.
        """
        y = np.asarray(y, dtype=np.int64) % self.modulus
        per_prime = []
        for pd in self._prime_data:
            coords = _coordinates_from_elimination(pd["elim"], y)
            if coords is None:
                return None
            per_prime.append(coords)
        L = len(self.orders)
        merged = []
        for t in range(L):
            rem, mod = 0, 1
            for pd, coords in zip(self._prime_data, per_prime):
                offset = L - len(coords)
                if t < offset:
                    continue
                o = pd["orders"][t - offset]
                c = coords[t - offset] % o
                # CRT: x = rem mod mod, x = c mod o (mod, o coprime)
                h = ((c - rem) * pow(mod % o, -1, o)) % o if o > 1 else 0
                rem, mod = rem + mod * h, mod * o
            merged.append(rem % self.orders[t] if self.orders[t] else rem)
        return tuple(merged)

    def contains(self, x) -> bool:
        if self.is_empty:
            return False
        y = (np.asarray(x, dtype=np.int64) - self.particular) % self.modulus
        return self.kernel_coordinates(y) is not None

    def __repr__(self):
        if self.is_empty:
            return f"AffineSolutionSet(empty, mod {self.modulus})"
        return f"AffineSolutionSet({self.cardinality()} solutions, mod {self.modulus}, orders {list(self.orders)})"


def solve_affine_mod(A, b, modulus: int) -> AffineSolutionSet:
    """Solve A x = b over Z/modulus exactly.

    >>> s = solve_affine_mod([[2]], [1], 4)
    >>> s.is_empty
    True
    >>> sorted(solve_affine_mod([[2]], [2], 4))
    [(1,), (3,)]
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    m, n = A.shape
    b = np.asarray(b, dtype=np.int64).reshape(m) if m else np.zeros(0, dtype=np.int64)
    M = int(modulus)
    if M == 1:
        return AffineSolutionSet(1, n, np.zeros(n, dtype=np.int64), [], [], [])
    if n == 0:
        ok = not np.any(b % M)
        return AffineSolutionSet(M, 0, np.zeros(0, dtype=np.int64) if ok else None, [], [], [])

    factors = factor_prime_powers(M)
    qs = [q for (_, _, q) in factors]
    crt = _crt_idempotents(M, qs)
    prime_data = []
    for (p, e, q), c_q in zip(factors, crt):
        el = eliminate_mod_prime_power(A, p, e, b=b, track_cols=True)
        x0 = _particular_from_elimination(el)
        if x0 is None:
            return AffineSolutionSet(M, n, None, [], [], [])
        gens, orders = _kernel_from_elimination(el)
        prime_data.append(
            {"p": p, "e": e, "q": q, "crt": c_q, "elim": el, "x0": x0, "gens": gens, "orders": orders}
        )

    particular = np.zeros(n, dtype=np.int64)
    for pd in prime_data:
        particular = (particular + pd["crt"] * pd["x0"]) % M

    L = max((len(pd["orders"]) for pd in prime_data), default=0)
    gens, orders = [], []
    for t in range(L):
        g = np.zeros(n, dtype=np.int64)
        o = 1
        for pd in prime_data:
            offset = L - len(pd["orders"])
            if t < offset:
                continue
            g = (g + pd["crt"] * pd["gens"][t - offset]) % M
            o *= pd["orders"][t - offset]
        if o > 1:
            gens.append(g)
            orders.append(o)
    # positions with merged order 1 can only be a (possibly empty) prefix
    return AffineSolutionSet(M, n, particular, gens, orders, prime_data)


# ---------------------------------------------------------------------------
# quotients of finite abelian p-groups given by generators and relations
# ---------------------------------------------------------------------------


def quotient_mod_prime_power(orders, relations, p: int, e: int):
    """Structure of (⊕_i Z/orders[i]) / <rows of relations>.

    All ``orders`` are powers of p dividing p^e and ``relations`` rows are
    coefficient vectors on those generators.  Returns ``(factors, lifts)``:
    the nontrivial cyclic orders of the quotient (ascending) and, for each,
    an integer coefficient vector on the original generators representing
    that quotient coordinate.
    """
    q = p**e
    s = len(orders)
    if s == 0:
        return [], np.zeros((0, 0), dtype=np.int64)
    rel_rows = [np.diag(np.array(orders, dtype=np.int64))]
    relations = np.atleast_2d(np.asarray(relations, dtype=np.int64))
    if relations.size:
        rel_rows.append(relations % q)
    R = np.vstack(rel_rows)
    # columns of R.T span the relation subgroup of (Z/q)^s
    el = eliminate_mod_prime_power(R.T, p, e, track_cols=False, track_rows=True)
    factors, lifts = [], []
    for i in range(s):
        c = el.pivots[i] if i < len(el.pivots) else e
        if p**c > 1:
            factors.append(p**c)
            lifts.append(el.Uinv[:, i] % q)
    return factors, (np.array(lifts, dtype=np.int64) if lifts else np.zeros((0, s), dtype=np.int64))


def merge_invariant_factors(per_prime: list[list[int]]) -> list[int]:
    """Zip per-prime cyclic orders into an invariant factor chain.

    Each input list is ascending (powers of one prime); the output is the
    ascending chain d_1 | d_2 | ... of the direct sum.

    >>> merge_invariant_factors([[2, 4], [3]])
    [2, 12]
    """
    L = max((len(lst) for lst in per_prime), default=0)
    out = []
    for t in range(L):
        f = 1
        for lst in per_prime:
            off = L - len(lst)
            if t >= off:
                f *= lst[t - off]
        out.append(f)
    return [f for f in out if f > 1]
