"""Prime and prime-power finite fields with a fixed generator and a dense
discrete-index table.

Elements of F_p are plain ints in [0, p-1].  Elements of F_{p^r}, r > 1, are
tuples of r coefficients over [0, p-1], lowest degree first, taken modulo a
monic irreducible polynomial.  Every element also has a canonical integer
encoding (its coefficients read as base-p digits, constant term least
significant), which is what the index table is keyed on.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from dataclasses import field as dc_field
from functools import cached_property
from pathlib import Path
from typing import Union

from sympy import factorint, isprime

from .errors import CacheMismatch, CongruenceFailed, DegenerateField, NotPrime, ZeroArgument

FieldElement = Union[int, tuple]

# O(q) tables are built eagerly; anything larger is refused outright.
MAX_Q = 10**7


# --------------------------------------------------------------------------
# polynomials over F_p (lists, lowest degree first)


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    """Remainder of a modulo m over F_p (m need not be monic)."""
    a = [c % p for c in a]
    m = _trim(m)
    inv = pow(m[-1], -1, p)
    dm = len(m) - 1
    for k in range(len(a) - 1, dm - 1, -1):
        c = a[k] * inv % p
        if c:
            for t in range(dm + 1):
                a[k - dm + t] = (a[k - dm + t] - c * m[t]) % p
    return _trim(a[:dm])


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] = (r[i + j] + x * y) % p
    return r


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _x_power_mod(e, m, p):
    """x^e mod m over F_p by square-and-multiply."""
    result, base = [1], _poly_mod([0, 1], m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(poly, p: int) -> bool:
    """Rabin's test for a monic polynomial given lowest degree first."""
    poly = _trim(poly)
    r = len(poly) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    if _poly_sub(_x_power_mod(p**r, poly, p), [0, 1], p):
        return False
    for d in factorint(r):
        h = _poly_sub(_x_power_mod(p ** (r // d), poly, p), [0, 1], p)
        if len(_poly_gcd(poly, h, p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, r: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree r over F_p,
    coefficients compared constant term first."""
    for low in itertools.product(range(p), repeat=r):
        if low[0] == 0:
            continue
        poly = low + (1,)
        if is_irreducible(poly, p):
            return poly
    raise DegenerateField(f"no irreducible polynomial of degree {r} over F_{p}")


# --------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class FieldSpec:
    p: int
    r: int
    l: int
    q: int
    k: int
    gamma: int  # canonical encoding of the generator
    modulus: tuple | None = None  # monic, lowest degree first, r + 1 entries

    @property
    def e_max(self) -> int:
        return 2 * self.l * self.l

    def encode(self, x: FieldElement) -> int:
        if self.r == 1:
            return x % self.p
        code = 0
        for c in reversed(x):
            code = code * self.p + c % self.p
        return code

    def decode(self, code: int) -> FieldElement:
        if self.r == 1:
            return code
        digits = []
        for _ in range(self.r):
            code, c = divmod(code, self.p)
            digits.append(c)
        return tuple(digits)

    def element(self, n: int) -> FieldElement:
        """Image of the integer n in the prime subfield (2 means 1 + 1)."""
        return self.decode(n % self.p)

    @property
    def gamma_element(self) -> FieldElement:
        return self.decode(self.gamma)

    def describe(self) -> str:
        if self.r == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.r} = F_{self.p}[x]/({poly_str(self.modulus)})"


def poly_str(coeffs, var: str = "x") -> str:
    terms = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


def field_add(f: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    if f.r == 1:
        return (a + b) % f.p
    return tuple((x + y) % f.p for x, y in zip(a, b))


def field_neg(f: FieldSpec, a: FieldElement) -> FieldElement:
    if f.r == 1:
        return -a % f.p
    return tuple(-x % f.p for x in a)


def field_mul(f: FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement:
    if f.r == 1:
        return a * b % f.p
    prod = _poly_mod(_poly_mul(a, b, f.p), f.modulus, f.p)
    return tuple(prod) + (0,) * (f.r - len(prod))


def field_pow(f: FieldSpec, a: FieldElement, e: int) -> FieldElement:
    if f.r == 1:
        return pow(a, e, f.p)
    result, base = f.element(1), a
    while e:
        if e & 1:
            result = field_mul(f, result, base)
        base = field_mul(f, base, base)
        e >>= 1
    return result


def _has_full_order(f: FieldSpec, x: FieldElement, prime_factors) -> bool:
    one = f.element(1)
    return all(field_pow(f, x, (f.q - 1) // s) != one for s in prime_factors)


def make_field(p: int, r: int, l: int) -> FieldSpec:
    """Build F_{p^r} for use with characters of order dividing 2l^2.

    The generator is the smallest element (by canonical encoding) of order
    q - 1; for r = 1 that is the least primitive root >= 2.
    """
    if not isprime(l):
        raise NotPrime(f"l = {l} is not prime")
    if l == 2:
        raise DegenerateField("l must be an odd prime")
    if not isprime(p):
        raise NotPrime(f"p = {p} is not prime")
    if r < 1:
        raise DegenerateField(f"extension degree r = {r} must be positive")
    if p in (2, l):
        raise DegenerateField(f"p = {p} divides 2l = {2 * l}")
    q = p**r
    e = 2 * l * l
    if (q - 1) % e:
        raise CongruenceFailed(f"q = {p}^{r} = {q} is not 1 mod 2l^2 = {e} (q mod {e} = {q % e})")
    if q > MAX_Q:
        raise DegenerateField(f"q = {q} exceeds the enumeration limit {MAX_Q}")

    modulus = smallest_irreducible(p, r) if r > 1 else None
    probe = FieldSpec(p=p, r=r, l=l, q=q, k=(q - 1) // e, gamma=0, modulus=modulus)
    primes = list(factorint(q - 1))
    for code in range(2, q):
        if _has_full_order(probe, probe.decode(code), primes):
            return FieldSpec(p=p, r=r, l=l, q=q, k=probe.k, gamma=code, modulus=modulus)
    raise DegenerateField(f"no generator found for F_{q}")  # pragma: no cover


# --------------------------------------------------------------------------
# index tables


@dataclass(frozen=True, eq=False)
class IndexTable:
    """Dense discrete-index table: logs[code] = t with gamma^t = decode(code).

    logs[0] is -1 (zero has no index); powers[t] is the code of gamma^t.
    """

    field: FieldSpec
    logs: tuple
    powers: tuple = dc_field(repr=False)

    def __len__(self) -> int:
        return len(self.powers)

    def __getitem__(self, x: FieldElement) -> int:
        return ind(self, x)

    @cached_property
    def _plus_one(self) -> list:
        f = self.field
        one = f.element(1)
        return [f.encode(field_add(f, f.decode(c), one)) for c in range(f.q)]

    @cached_property
    def shift_pairs(self) -> tuple:
        """(ind v, ind(v+1)) for every v outside {0, -1}."""
        logs = self.logs
        return tuple(
            (logs[c], logs[c1])
            for c, c1 in enumerate(self._plus_one)
            if c and c1
        )

    @cached_property
    def reflect_pairs(self) -> tuple:
        """(ind v, ind(1-v)) for every v outside {0, 1}."""
        f = self.field
        logs = self.logs
        neg = [f.encode(field_neg(f, f.decode(c))) for c in range(f.q)]
        one_minus = [self._plus_one[neg[c]] for c in range(f.q)]
        return tuple((logs[c], logs[c1]) for c, c1 in enumerate(one_minus) if c and c1)


def build_index_table(f: FieldSpec) -> IndexTable:
    logs = [-1] * f.q
    powers = []
    x = f.element(1)
    g = f.gamma_element
    for t in range(f.q - 1):
        code = f.encode(x)
        if logs[code] != -1:
            raise DegenerateField(f"gamma = {f.gamma} is not a generator of F_{f.q}^*")
        logs[code] = t
        powers.append(code)
        x = field_mul(f, x, g)
    return IndexTable(field=f, logs=tuple(logs), powers=tuple(powers))


def ind(t: IndexTable, x: FieldElement) -> int:
    code = t.field.encode(x)
    if code == 0:
        raise ZeroArgument("ind(0) is undefined")
    return t.logs[code]


# --------------------------------------------------------------------------
# on-disk cache: header "p r q gamma l", then "<code> <index>" per element


def _header(f: FieldSpec) -> str:
    return f"{f.p} {f.r} {f.q} {f.gamma} {f.l}"


def cache_path(f: FieldSpec, cache_dir: str | os.PathLike) -> Path:
    return Path(cache_dir) / f"dlog_p{f.p}_r{f.r}_l{f.l}_g{f.gamma}.txt"


def save_index_table(t: IndexTable, path: str | os.PathLike) -> None:
    lines = [_header(t.field)]
    lines += [f"{code} {t.logs[code]}" for code in range(1, t.field.q)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_index_table(f: FieldSpec, path: str | os.PathLike) -> IndexTable:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != _header(f):
            raise CacheMismatch(f"{path}: header {header!r} does not match {_header(f)!r}")
        logs = [-1] * f.q
        powers = [0] * (f.q - 1)
        expected = 1
        for line in fh:
            if not line.strip():
                continue
            code, t = map(int, line.split())
            if code != expected or not 0 <= t < f.q - 1:
                raise CacheMismatch(f"{path}: malformed entry {line.strip()!r}")
            logs[code] = t
            powers[t] = code
            expected += 1
    if expected != f.q or sorted(powers) != list(range(1, f.q)):
        raise CacheMismatch(f"{path}: table is not a bijection onto F_{f.q}^*")
    if powers[0] != f.encode(f.element(1)) or powers[1] != f.gamma:
        raise CacheMismatch(f"{path}: table is not built on gamma = {f.gamma}")
    return IndexTable(field=f, logs=tuple(logs), powers=tuple(powers))


def cached_index_table(f: FieldSpec, cache_dir: str | os.PathLike | None) -> IndexTable:
    """Load the table from cache_dir if a valid file exists, else build and
    store it.  Unreadable or mismatched cache files are rebuilt."""
    if cache_dir is None:
        return build_index_table(f)
    path = cache_path(f, cache_dir)
    if path.exists():
        try:
            return load_index_table(f, path)
        except (CacheMismatch, ValueError, OSError):
            pass
    table = build_index_table(f)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        save_index_table(table, path)
    except OSError:
        pass
    return table
