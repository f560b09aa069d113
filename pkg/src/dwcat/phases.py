"""Exact phases and small cyclotomic sums.

A *phase* is an element of Q/Z written additively; the phase q stands for
the root of unity exp(2*pi*i*q).  All the multiplicative identities between
roots of unity that the category machinery needs then become additive
identities between phases, which keeps every check exact integer arithmetic.

Sums of roots of unity (as opposed to single roots) live in the ring of
cyclotomic integers.  ``CycloSum`` represents a finite Z-linear combination
of phases and decides equality by reducing the exponent vector modulo the
cyclotomic polynomial Phi_M, so e.g. the sum of all p-th roots of unity is
recognised as 0 and ``1 + zeta_4 + zeta_4^2 + zeta_4^3`` as 0 as well.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, lcm


class Phase:
    """An element of Q/Z in lowest terms, ``0 <= num < den``.

    >>> Phase(5, 10)
    Phase(1, 2)
    >>> Phase(-1, 3) + Phase(2, 3)
    Phase(0, 1)
    >>> (Phase(1, 6) * 4).as_fraction_str()
    '2/3'
    """

    __slots__ = ("num", "den")

    def __init__(self, num: int, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("phase with denominator 0")
        if den < 0:
            num, den = -num, -den
        num %= den
        g = gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    def __setattr__(self, name, value):
        raise AttributeError("Phase is immutable")

    # -- arithmetic in Q/Z --------------------------------------------------

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Phase":
        return Phase(-self.num, self.den)

    def __mul__(self, k: int) -> "Phase":
        if not isinstance(k, int):
            return NotImplemented
        return Phase(self.num * k, self.den)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Phase) and self.num == other.num and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return self.num != 0

    def __repr__(self):
        return f"Phase({self.num}, {self.den})"

    # -- conversions --------------------------------------------------------

    def as_fraction_str(self) -> str:
        return f"{self.num}/{self.den}"

    @classmethod
    def parse(cls, text: str) -> "Phase":
        """Parse 'a/b' or a bare integer 'a' (the trivial phase)."""
        text = text.strip()
        if "/" in text:
            a, b = text.split("/", 1)
            return cls(int(a), int(b))
        return cls(int(text), 1)

    def scaled_num(self, modulus: int) -> int:
        """Numerator of this phase over the common denominator ``modulus``.

        Raises if the denominator does not divide ``modulus``.
        """
        if modulus % self.den:
            raise ValueError(f"phase {self} does not live in (1/{modulus})Z/Z")
        return self.num * (modulus // self.den)

    @property
    def order(self) -> int:
        """Order of the phase in Q/Z (= its denominator)."""
        return self.den


ZERO_PHASE = Phase(0, 1)
HALF = Phase(1, 2)


# ---------------------------------------------------------------------------
# cyclotomic polynomials, as integer coefficient tuples (low degree first)
# ---------------------------------------------------------------------------


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _poly_divmod_exact(num, den):
    """Divide integer polynomials, asserting the remainder is zero."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c == 0:
            continue
        assert c % lead == 0
        q = c // lead
        quot[i - dn] = q
        for j, dj in enumerate(den):
            num[i - dn + j] -= q * dj
    assert not any(num), "inexact polynomial division"
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, lowest degree first.

    Computed by dividing x^m - 1 by the Phi_d for proper divisors d of m.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if m < 1:
        raise ValueError("m must be positive")
    num = [0] * (m + 1)
    num[0], num[m] = -1, 1
    for d in range(1, m):
        if m % d == 0:
            num = _poly_divmod_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


def _reduce_mod_cyclotomic(coeffs: list[int], m: int) -> list[int]:
    """Remainder of sum_k coeffs[k] * x^k modulo Phi_m (degree < phi(m))."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        # phi is monic, so this stays integral
        for j, pj in enumerate(phi):
            rem[i - deg + j] -= c * pj
    del rem[deg:]
    while rem and rem[-1] == 0:
        rem.pop()
    return rem


class CycloSum:
    """A finite Z-linear combination of phases, i.e. a cyclotomic integer.

    >>> s = CycloSum.from_phases([Phase(0, 3), Phase(1, 3), Phase(2, 3)])
    >>> s.is_zero()
    True
    >>> (CycloSum.one() * 5).as_integer()
    5
    >>> CycloSum.from_phases([Phase(1, 5)]).as_integer() is None
    True
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[Phase, int] | None = None):
        self._terms: dict[Phase, int] = {}
        if terms:
            for ph, c in terms.items():
                if c:
                    self._terms[ph] = self._terms.get(ph, 0) + c

    @classmethod
    def zero(cls) -> "CycloSum":
        return cls()

    @classmethod
    def one(cls) -> "CycloSum":
        return cls({ZERO_PHASE: 1})

    @classmethod
    def from_phase(cls, ph: Phase, coeff: int = 1) -> "CycloSum":
        return cls({ph: coeff})

    @classmethod
    def from_phases(cls, phases) -> "CycloSum":
        terms: dict[Phase, int] = {}
        for ph in phases:
            terms[ph] = terms.get(ph, 0) + 1
        return cls(terms)

    def terms(self) -> dict[Phase, int]:
        return dict(self._terms)

    def __add__(self, other: "CycloSum") -> "CycloSum":
        terms = dict(self._terms)
        for ph, c in other._terms.items():
            terms[ph] = terms.get(ph, 0) + c
        return CycloSum(terms)

    def __sub__(self, other: "CycloSum") -> "CycloSum":
        terms = dict(self._terms)
        for ph, c in other._terms.items():
            terms[ph] = terms.get(ph, 0) - c
        return CycloSum(terms)

    def __neg__(self) -> "CycloSum":
        return CycloSum({ph: -c for ph, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloSum({ph: c * other for ph, c in self._terms.items()})
        if isinstance(other, Phase):
            return CycloSum({ph + other: c for ph, c in self._terms.items()})
        if isinstance(other, CycloSum):
            terms: dict[Phase, int] = {}
            for p1, c1 in self._terms.items():
                for p2, c2 in other._terms.items():
                    q = p1 + p2
                    terms[q] = terms.get(q, 0) + c1 * c2
            return CycloSum(terms)
        return NotImplemented

    __rmul__ = __mul__

    def _exponent_vector(self) -> tuple[list[int], int]:
        m = 1
        for ph in self._terms:
            m = lcm(m, ph.den)
        vec = [0] * m
        for ph, c in self._terms.items():
            vec[ph.num * (m // ph.den)] += c
        return vec, m

    def is_zero(self) -> bool:
        if not self._terms:
            return True
        vec, m = self._exponent_vector()
        return not _reduce_mod_cyclotomic(vec, m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloSum):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CycloSum is unhashable (equality is up to reduction)")

    def as_integer(self) -> int | None:
        """The value as a rational integer, or None if it is not one.

        Relies on Phi_m having degree > 1 for m > 2, plus the m <= 2 cases
        being honest integers already.
        """
        vec, m = self._exponent_vector()
        rem = _reduce_mod_cyclotomic(vec, m)
        if not rem:
            return 0
        if len(rem) == 1:
            return rem[0]
        return None

    def __repr__(self):
        if not self._terms:
            return "CycloSum(0)"
        bits = ", ".join(
            f"{ph.as_fraction_str()}: {c}"
            for ph, c in sorted(self._terms.items(), key=lambda t: (t[0].den, t[0].num))
        )
        return f"CycloSum({{{bits}}})"
