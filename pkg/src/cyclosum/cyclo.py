"""Exact arithmetic in Z[z], z a primitive l^2-th root of unity.

Elements are integer vectors in the power basis 1, z, ..., z^(d-1) with
d = l(l-1).  Reduction uses Phi_{l^2}(z) = 1 + z^l + ... + z^(l(l-1)) = 0.
Since phi(2l^2) = phi(l^2), the 2l^2-th roots of unity live in the same
ring through zeta_{2l^2} = -z^((l^2+1)/2).

The prime above l is generated by lam = 1 - z and is totally ramified, so
Z[z]/(lam) = F_l via z -> 1: a is divisible by lam iff its coefficient sum
is divisible by l.  Exact division by lam multiplies by the cofactor
M = prod_{k != 1} (1 - z^k) (lam * M = Phi_{l^2}(1) = l) and divides by l.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable

from sympy import isprime

from .errors import NotAUnit, NotDivisible


class AtLeastCap(int):
    """Valuation result meaning "at least cap".  Behaves as the int cap in
    comparisons, so ``v >= required`` works whether or not the cap was hit."""

    def __repr__(self) -> str:
        return f"AtLeastCap({int(self)})"

    def __str__(self) -> str:
        return f">={int(self)}"


class CycInt:
    """An element of Z[zeta_{l^2}]; immutable, compares by value."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: CycRing, coeffs: tuple):
        self.ring = ring
        self.coeffs = coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        return self.ring.l == other.ring.l and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring.l, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.from_int(other)
        if isinstance(other, CycInt):
            if other.ring.l != self.ring.l:
                raise ValueError("elements of different rings")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring.add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring.sub(self, other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring.sub(other, self)

    def __neg__(self):
        return self.ring.neg(self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.ring, tuple(other * c for c in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.ring.mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not ring elements")
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __repr__(self):
        return f"CycInt(l={self.ring.l}, {list(self.coeffs)})"

    def __str__(self):
        return render(self)


def render(a: CycInt, var: str = "z") -> str:
    """``c0 + c1*z + ... + c{d-1}*z^{d-1}``, zero terms omitted."""
    out = []
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        mag = abs(c)
        term = str(mag) if not mono else mono if mag == 1 else f"{mag}*{mono}"
        if not out:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {term}")
    return " ".join(out) or "0"


@dataclass(frozen=True)
class LambdaDigits:
    """a = sum(d_t * lam^t for t < m) + lam^m * remainder."""

    digits: tuple
    remainder: CycInt


class CycRing:
    """Z[zeta_{l^2}] for an odd prime l.  Use :func:`cyclo_ring` to share
    instances."""

    def __init__(self, l: int):
        if l < 3 or not isprime(l):
            raise ValueError(f"l = {l} must be an odd prime")
        self.l = l
        self.order = l * l
        self.degree = l * (l - 1)

    def __repr__(self):
        return f"CycRing(l={self.l})"

    def __reduce__(self):
        return (cyclo_ring, (self.l,))

    # ------------------------------------------------------------ building

    def _reduce(self, v: list) -> CycInt:
        """Fold an exponent-indexed list of any length into canonical form."""
        n, d, l = self.order, self.degree, self.l
        if len(v) > n:
            w = v[:n]
            for i in range(n, len(v)):
                w[i % n] += v[i]
            v = w
        elif len(v) < n:
            v = v + [0] * (n - len(v))
        # z^(d+s) = -(z^s + z^(s+l) + ... + z^(s+l(l-2))) for 0 <= s < l
        for s in range(l):
            c = v[d + s]
            if c:
                for j in range(s, d, l):
                    v[j] -= c
        return CycInt(self, tuple(v[:d]))

    def element(self, coeffs: Iterable[int]) -> CycInt:
        return self._reduce([int(c) for c in coeffs])

    def from_int(self, c: int) -> CycInt:
        return CycInt(self, (c,) + (0,) * (self.degree - 1))

    @cached_property
    def zero(self) -> CycInt:
        return self.from_int(0)

    @cached_property
    def one(self) -> CycInt:
        return self.from_int(1)

    @cached_property
    def lam(self) -> CycInt:
        """lam = 1 - z."""
        return self.one - self.zeta_pow(1)

    @cached_property
    def lambda_cofactor(self) -> CycInt:
        """M with lam * M = l."""
        m = self.one
        for k in range(2, self.order):
            if k % self.l:
                m = m * (self.one - self.zeta_pow(k))
        return m

    def zeta_pow(self, k: int) -> CycInt:
        v = [0] * self.order
        v[k % self.order] = 1
        return self._reduce(v)

    def zeta_2l2_pow(self, t: int) -> CycInt:
        """zeta_{2l^2}^t = (-1)^t z^(t(l^2+1)/2)."""
        return self.from_2l2_counts({t % (2 * self.order): 1})

    def from_2l2_counts(self, counts) -> CycInt:
        """sum(c_t * zeta_{2l^2}^t) for a mapping or sequence t -> c_t."""
        n = self.order
        half = (n + 1) // 2
        items = counts.items() if hasattr(counts, "items") else enumerate(counts)
        v = [0] * n
        for t, c in items:
            if c:
                v[t * half % n] += -c if t % 2 else c
        return self._reduce(v)

    # ---------------------------------------------------------- arithmetic

    def add(self, a: CycInt, b: CycInt) -> CycInt:
        return CycInt(self, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: CycInt, b: CycInt) -> CycInt:
        return CycInt(self, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: CycInt) -> CycInt:
        return CycInt(self, tuple(-x for x in a.coeffs))

    def mul(self, a: CycInt, b: CycInt) -> CycInt:
        """Exact product: Kronecker substitution into one big-int multiply,
        then wrap mod z^(l^2) - 1 and fold by Phi_{l^2}."""
        ma = max(map(abs, a.coeffs))
        mb = max(map(abs, b.coeffs))
        if not ma or not mb:
            return self.zero
        bits = (ma * mb * self.degree).bit_length() + 2
        pa = 0
        for c in reversed(a.coeffs):
            pa = (pa << bits) + c
        pb = 0
        for c in reversed(b.coeffs):
            pb = (pb << bits) + c
        prod = pa * pb
        mask = (1 << bits) - 1
        half = 1 << (bits - 1)
        full = 1 << bits
        out = []
        for _ in range(2 * self.degree - 1):
            c = prod & mask
            if c >= half:
                c -= full
            out.append(c)
            prod = (prod - c) >> bits
        return self._reduce(out)

    def apply_automorphism(self, a: CycInt, k: int) -> CycInt:
        """sigma_k: z -> z^k, for k prime to l."""
        if gcd(k, self.l) != 1:
            raise NotAUnit(f"k = {k} is not prime to l = {self.l}")
        n = self.order
        v = [0] * n
        for i, c in enumerate(a.coeffs):
            if c:
                v[i * k % n] += c
        return self._reduce(v)

    def conjugate(self, a: CycInt) -> CycInt:
        return self.apply_automorphism(a, -1)

    # ----------------------------------------------------- lam-adic tools

    def lambda_divisible(self, a: CycInt) -> bool:
        return sum(a.coeffs) % self.l == 0

    def exact_div_lambda(self, a: CycInt) -> CycInt:
        b = self.mul(a, self.lambda_cofactor)
        l = self.l
        if any(c % l for c in b.coeffs):
            raise NotDivisible(f"{render(a)} is not divisible by 1 - z")
        return CycInt(self, tuple(c // l for c in b.coeffs))

    def lambda_valuation(self, a: CycInt, cap: int) -> int:
        """Largest v < cap with lam^v | a, or ``AtLeastCap(cap)``."""
        if cap < 1:
            raise ValueError("cap must be positive")
        for v in range(cap):
            if not a:
                return AtLeastCap(cap)
            if not self.lambda_divisible(a):
                return v
            a = self.exact_div_lambda(a)
        return AtLeastCap(cap)

    def lambda_digit_expand(self, a: CycInt, m: int) -> LambdaDigits:
        """First m digits of a in base lam with digits in {0, ..., l-1}."""
        if m < 1:
            raise ValueError("m must be positive")
        digits = []
        for _ in range(m):
            d = sum(a.coeffs) % self.l
            digits.append(d)
            a = self.exact_div_lambda(a - d)
        return LambdaDigits(tuple(digits), a)

    def congruent(self, a: CycInt, b: CycInt, k: int) -> bool:
        """a = b (mod lam^k)."""
        return self.lambda_valuation(a - b, k) >= k


@lru_cache(maxsize=None)
def cyclo_ring(l: int) -> CycRing:
    return CycRing(l)
