"""Congruences for J_{l^2}(1, n) and J_{2l^2}(1, n) modulo lam^(l+1),
lam = 1 - zeta_{l^2}, checked by exact lam-adic valuation.

The order-l^2 coefficients c_{i,n} are read off numerically: expand
J_{l^2}(1, n) + 1 in base lam, then convert digit d_i to c_i = (-1)^i d_i
mod l, because the congruences are written in powers of (z - 1) = -lam.

Every right-hand side is a product of factors

    F(idx, b) = -1 + sum_{i=3}^{l} c_{i,idx} (z^b - 1)^i

times a root of unity.  idx is reduced mod l^2 and F is -1 when the reduced
index is divisible by l.  Where a relation carries a factor q on one side,
q is dropped: q = 1 (mod l^2), so v_lam(q - 1) >= 2l(l-1) > l + 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from dataclasses import field as dc_field
from math import gcd

from .cyclo import AtLeastCap, CycInt, CycRing, cyclo_ring
from .errors import BadD, BadN, TheoremViolation
from .ff import FieldSpec, IndexTable, cached_index_table, make_field
from .jacobi import chi_eval, chi_minus_one, jacobi_sum, jacobi_sum_reflected

CASE_L2 = "n=l^2"
CASE_DL = "n=dl"
CASE_COPRIME = "coprime"
CASE_MAX = "n=2l^2-1"
CASE_EVEN = "even-reduction"
CASE_T_COPRIME = "gcd(n,l)=1"
CASE_T_MULTIPLE = "gcd(n,l)=l"


@dataclass(eq=False)
class VerificationContext:
    field: FieldSpec
    table: IndexTable
    ring: CycRing
    w: int  # ind_gamma(2)
    _sums: dict = dc_field(default_factory=dict, repr=False)
    _coeffs: dict = dc_field(default_factory=dict, repr=False)

    @property
    def l(self) -> int:
        return self.field.l

    @property
    def required(self) -> int:
        return self.field.l + 1

    @property
    def cap(self) -> int:
        # one above required, so "exactly l+1" and "more" are distinguishable
        return self.field.l + 2

    def J(self, e: int, i: int, j: int) -> CycInt:
        key = (e, i % e, j % e)
        value = self._sums.get(key)
        if value is None:
            value = jacobi_sum(self.field, self.table, *key).value
            self._sums[key] = value
        return value

    def J_reflected(self, e: int, i: int, j: int) -> CycInt:
        return jacobi_sum_reflected(self.field, self.table, e, i, j).value

    def valuation(self, a: CycInt) -> int:
        return self.ring.lambda_valuation(a, self.cap)


def context_for_field(f: FieldSpec, table: IndexTable | None = None) -> VerificationContext:
    table = table if table is not None else cached_index_table(f, None)
    w = table.logs[f.encode(f.element(2))]
    return VerificationContext(field=f, table=table, ring=cyclo_ring(f.l), w=w)


def make_context(p: int, r: int, l: int, cache_dir=None) -> VerificationContext:
    f = make_field(p, r, l)
    return context_for_field(f, cached_index_table(f, cache_dir))


# --------------------------------------------------------------------------
# order l^2


@dataclass(frozen=True)
class CCoeffs:
    n: int
    coeffs: tuple  # c_3, ..., c_l
    digits: tuple  # lam-adic digits d_0, ..., d_l of J_{l^2}(1, n) + 1

    def c(self, i: int) -> int:
        return self.coeffs[i - 3]


def extract_c_coeffs(ctx: VerificationContext, n: int) -> CCoeffs:
    l = ctx.l
    if not 1 <= n <= l * l - 1 or gcd(n, l) != 1:
        raise BadN(f"n = {n} must lie in [1, {l * l - 1}] and be prime to l = {l}")
    cached = ctx._coeffs.get(n)
    if cached is not None:
        return cached
    delta = ctx.J(l * l, 1, n) + 1
    digits = ctx.ring.lambda_digit_expand(delta, l + 1).digits
    if any(digits[:3]):
        raise TheoremViolation(
            f"J_{l * l}(1,{n}) + 1 has low lam-adic digits {digits[:3]}, expected (0, 0, 0)"
        )
    coeffs = tuple((-1) ** i * digits[i] % l for i in range(3, l + 1))
    result = CCoeffs(n=n, coeffs=coeffs, digits=digits)
    ctx._coeffs[n] = result
    return result


def c_series(ctx: VerificationContext, index: int, base_exp: int) -> CycInt:
    """-1 + sum_{i=3}^{l} c_{i,index} (z^base_exp - 1)^i, index mod l^2."""
    ring, l = ctx.ring, ctx.l
    index %= l * l
    if index % l == 0:
        return -ring.one
    cc = extract_c_coeffs(ctx, index)
    base = ring.zeta_pow(base_exp) - 1
    acc = -ring.one
    power = base * base
    for i in range(3, l + 1):
        power = power * base
        if cc.c(i):
            acc = acc + cc.c(i) * power
    return acc


@dataclass(frozen=True)
class CaseResult:
    n: int
    case: str
    required: int
    achieved: int  # may be an AtLeastCap
    passed: bool
    exact: bool | None = None  # for cases that must hold as equalities
    reduced_to: int | None = None
    coeffs: tuple | None = None

    def to_dict(self) -> dict:
        achieved = "cap" if isinstance(self.achieved, AtLeastCap) else int(self.achieved)
        return {
            "n": self.n,
            "case": self.case,
            "required": self.required,
            "achieved": achieved,
            "pass": self.passed,
        }


def verify_order_l2(ctx: VerificationContext, n: int) -> CaseResult:
    l = ctx.l
    if not 1 <= n <= l * l - 1:
        raise BadN(f"n = {n} must lie in [1, {l * l - 1}]")
    lhs = ctx.J(l * l, 1, n)
    if n % l == 0:
        achieved = ctx.valuation(lhs + 1)
        return CaseResult(n, CASE_T_MULTIPLE, ctx.required, achieved, achieved >= ctx.required)
    try:
        cc = extract_c_coeffs(ctx, n)
    except TheoremViolation:
        achieved = ctx.valuation(lhs + 1)
        return CaseResult(n, CASE_T_COPRIME, ctx.required, achieved, False)
    achieved = ctx.valuation(lhs - c_series(ctx, n, 1))
    return CaseResult(
        n, CASE_T_COPRIME, ctx.required, achieved, achieved >= ctx.required, coeffs=cc.coeffs
    )


# --------------------------------------------------------------------------
# order 2l^2: right-hand sides per case


def rhs_n_eq_l2(ctx: VerificationContext) -> CycInt:
    half = (ctx.l * ctx.l - 1) // 2
    return ctx.ring.zeta_pow(-ctx.w) * c_series(ctx, half, 1)


def rhs_n_eq_dl(ctx: VerificationContext, d: int) -> CycInt:
    l = ctx.l
    if d % 2 == 0 or not 1 <= d <= 2 * l - 1 or d == l:
        raise BadD(f"d = {d} must be odd, in [1, {2 * l - 1}] and different from l")
    n = d * l
    half = (l * l - 1) // 2
    unit = -ctx.ring.zeta_pow(-ctx.w * (n + 1))
    return unit * c_series(ctx, half, 1) * c_series(ctx, n - 1, (-1 - n) // 2)


def rhs_coprime(ctx: VerificationContext, n: int) -> CycInt:
    l = ctx.l
    top = 2 * l * l
    if not 1 <= n < top - 1 or gcd(n, top) != 1:
        raise BadN(f"n = {n} must be prime to {top} and lie in [1, {top - 2}]")
    half = (l * l - 1) // 2
    return (
        ctx.ring.zeta_pow(-ctx.w * (n + 1))
        * c_series(ctx, half, 1)
        * c_series(ctx, half, n)
        * c_series(ctx, -1 - n, (1 - l * l) // 2)
    )


def rhs_n_max(ctx: VerificationContext) -> CycInt:
    return -ctx.ring.one


def reduce_even_n(ctx: VerificationContext, n: int) -> tuple:
    """(n', sign) with n' = 2l^2 - n - 1 odd and J(1, n) = sign * J(1, n')."""
    top = 2 * ctx.l * ctx.l
    if n % 2 or not 2 <= n <= top - 2:
        raise BadN(f"n = {n} must be even and lie in [2, {top - 2}]")
    return top - n - 1, chi_minus_one(ctx.field, top)


def classify_odd(l: int, n: int) -> str:
    top = 2 * l * l
    if n % 2 == 0 or not 1 <= n <= top - 1:
        raise BadN(f"n = {n} must be odd and lie in [1, {top - 1}]")
    if n == l * l:
        return CASE_L2
    if n % l == 0:
        return CASE_DL
    if n == top - 1:
        return CASE_MAX
    return CASE_COPRIME


def rhs_odd(ctx: VerificationContext, n: int) -> tuple:
    case = classify_odd(ctx.l, n)
    if case == CASE_L2:
        return case, rhs_n_eq_l2(ctx)
    if case == CASE_DL:
        return case, rhs_n_eq_dl(ctx, n // ctx.l)
    if case == CASE_MAX:
        return case, rhs_n_max(ctx)
    return case, rhs_coprime(ctx, n)


def verify_case(ctx: VerificationContext, n: int) -> CaseResult:
    top = 2 * ctx.l * ctx.l
    lhs = ctx.J(top, 1, n)
    if n % 2 == 0:
        n_odd, sign = reduce_even_n(ctx, n)
        exact = lhs == sign * ctx.J(top, 1, n_odd)
        _, rhs = rhs_odd(ctx, n_odd)
        achieved = ctx.valuation(lhs - sign * rhs)
        passed = exact and achieved >= ctx.required
        return CaseResult(n, CASE_EVEN, ctx.required, achieved, passed, exact, n_odd)
    case, rhs = rhs_odd(ctx, n)
    achieved = ctx.valuation(lhs - rhs)
    exact = lhs == rhs if case == CASE_MAX else None
    passed = achieved >= ctx.required and exact is not False
    return CaseResult(n, case, ctx.required, achieved, passed, exact)


@dataclass
class CongruenceReport:
    l: int
    p: int
    r: int
    q: int
    gamma: int
    w: int
    modulus: tuple | None
    cases: list
    order_l2: list
    elapsed_ms: float = 0.0

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.cases) and all(c.passed for c in self.order_l2)

    def failures(self) -> list:
        return [c for c in self.cases + self.order_l2 if not c.passed]

    def to_dict(self, timing: bool = False) -> dict:
        order_l2 = []
        for c in self.order_l2:
            row = c.to_dict()
            row["c"] = list(c.coeffs) if c.coeffs is not None else None
            order_l2.append(row)
        return {
            "l": self.l,
            "p": self.p,
            "r": self.r,
            "q": self.q,
            "gamma": self.gamma,
            "w": self.w,
            "modulus": list(self.modulus) if self.modulus else None,
            "cases": [c.to_dict() for c in self.cases],
            "order_l2": order_l2,
            "all_pass": self.all_pass,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing else None,
        }


def verify_main_theorem(ctx: VerificationContext) -> CongruenceReport:
    """Check every n in [1, 2l^2 - 1] for J_{2l^2}(1, n), plus every n in
    [1, l^2 - 1] for J_{l^2}(1, n)."""
    start = time.perf_counter()
    l = ctx.l
    cases = [verify_case(ctx, n) for n in range(1, 2 * l * l)]
    order_l2 = [verify_order_l2(ctx, n) for n in range(1, l * l)]
    f = ctx.field
    return CongruenceReport(
        l=l,
        p=f.p,
        r=f.r,
        q=f.q,
        gamma=f.gamma,
        w=ctx.w,
        modulus=f.modulus,
        cases=cases,
        order_l2=order_l2,
        elapsed_ms=(time.perf_counter() - start) * 1000.0,
    )


# --------------------------------------------------------------------------
# exact identities


@dataclass
class IdentityCheck:
    name: str
    statement: str
    checked: int = 0
    violations: int = 0
    witness: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def record(self, ok: bool, witness: tuple) -> None:
        self.checked += 1
        if not ok:
            self.violations += 1
            if self.witness is None:
                self.witness = witness

    def to_dict(self) -> dict:
        return {
            "identity": self.name,
            "statement": self.statement,
            "checked": self.checked,
            "violations": self.violations,
            "pass": self.passed,
            "witness": list(self.witness) if self.witness is not None else None,
        }


@dataclass
class PropositionReport:
    l: int
    p: int
    r: int
    q: int
    gamma: int
    checks: list

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "l": self.l,
            "p": self.p,
            "r": self.r,
            "q": self.q,
            "gamma": self.gamma,
            "checks": [c.to_dict() for c in self.checks],
            "all_pass": self.all_pass,
        }


def _orders(l: int) -> tuple:
    return (l, 2 * l, l * l, 2 * l * l)


def _sign(ctx: VerificationContext, e: int, s: int) -> int:
    """chi_e^s(-1) as a rational integer (it is always +-1)."""
    base = chi_minus_one(ctx.field, e).coeffs[0]
    return base ** (s % 2)


def _check_reflection(ctx, check):
    for e in _orders(ctx.l):
        for m in range(e):
            for n in range(e):
                s = -m - n
                sign_s, sign_m = _sign(ctx, e, s), _sign(ctx, e, m)
                target = ctx.J(e, m, n)
                chain = (
                    ctx.J(e, s, n),
                    sign_s * ctx.J(e, s, m),
                    sign_s * ctx.J(e, n, m),
                    sign_m * ctx.J(e, m, s),
                    sign_m * ctx.J(e, n, s),
                )
                check.record(all(x == target for x in chain), (e, m, n))


def _check_trivial_character(ctx, check):
    q = ctx.field.q
    for e in _orders(ctx.l):
        for j in range(e):
            expected = q - 2 if j == 0 else -1
            check.record(ctx.J(e, 0, j) == expected, (e, 0, j))
        for i in range(1, e):
            check.record(ctx.J(e, i, 0) == -_sign(ctx, e, i), (e, i, 0))


def _check_opposite_exponents(ctx, check):
    for e in _orders(ctx.l):
        for m in range(1, e):
            check.record(ctx.J(e, m, e - m) == -1, (e, m, e - m))


def _check_galois_action(ctx, check):
    l = ctx.l
    n2 = l * l
    for e in _orders(l):
        if e % 2:
            ks = [k for k in range(1, n2) if gcd(k, l) == 1]
        else:
            # only odd k send zeta_{2l^2} to zeta_{2l^2}^k
            ks = [k for k in range(1, 2 * n2, 2) if gcd(k, l) == 1]
        for m in range(e):
            for n in range(e):
                value = ctx.J(e, m, n)
                for k in ks:
                    image = ctx.ring.apply_automorphism(value, k % n2)
                    check.record(image == ctx.J(e, m * k, n * k), (e, m, n, k))


def _check_order_doubling(ctx, check):
    l = ctx.l
    for e in (l, l * l):
        for m in range(e):
            for n in range(e):
                check.record(ctx.J(2 * e, 2 * m, 2 * n) == ctx.J(e, m, n), (e, m, n))


def _check_product_relation(ctx, check):
    top = 2 * ctx.l * ctx.l
    J = [[ctx.J(top, m, n) for n in range(top)] for m in range(top)]
    for m in range(top):
        sign = _sign(ctx, top, m)
        for n in range(top):
            if (m + n) % top == 0:
                continue
            row = J[(m + n) % top]
            for s in range(top):
                if (m + s) % top == 0:
                    continue
                lhs = J[m][n] * row[s]
                rhs = J[m][s] * J[n][(s + m) % top]
                check.record(lhs == sign * rhs, (m, n, s))


def _check_absolute_value(ctx, check):
    q = ctx.field.q
    for e in _orders(ctx.l):
        for n in range(e):
            value = ctx.J(e, 1, n)
            expected = 1 if n in (0, e - 1) else q
            check.record(value * ctx.ring.conjugate(value) == expected, (e, n))


def _check_duplication(ctx, check):
    f, l = ctx.field, ctx.l
    top = 2 * l * l
    four = f.element(4)
    for a in range(1, top):
        rhs = chi_eval(f, ctx.table, top, -a, four) * ctx.J(top, a, l * l)
        check.record(ctx.J(top, a, a) == rhs, (a,))


def _check_convention_relation(ctx, check):
    for e in _orders(ctx.l):
        for i in range(e):
            for j in range(e):
                rhs = _sign(ctx, e, i) * ctx.J_reflected(e, i, j)
                check.record(ctx.J(e, i, j) == rhs, (e, i, j))


IDENTITIES = (
    ("reflection", "m+n+s=0: J(m,n)=J(s,n)=chi^s(-1)J(s,m)=chi^s(-1)J(n,m)"
     "=chi^m(-1)J(m,s)=chi^m(-1)J(n,s)", _check_reflection),
    ("trivial_character", "J(0,j) = -1 or q-2; J(i,0) = -chi^i(-1)", _check_trivial_character),
    ("opposite_exponents", "m+n=0, (m,n)!=(0,0): J(m,n) = -1", _check_opposite_exponents),
    ("galois_action", "sigma_k J_e(m,n) = J_e(mk,nk)", _check_galois_action),
    ("order_doubling", "J_2e(2m,2n) = J_e(m,n)", _check_order_doubling),
    ("product_relation", "J(m,n)J(m+n,s) = chi^m(-1)J(m,s)J(n,s+m)", _check_product_relation),
    ("absolute_value", "J(1,n)*conj(J(1,n)) = q, or 1 for n=0,-1", _check_absolute_value),
    ("duplication", "J_2l^2(a,a) = chi^-a(4) J_2l^2(a,l^2), a != 0", _check_duplication),
    ("convention_relation", "J(i,j) = chi^i(-1) J(chi^i,chi^j)", _check_convention_relation),
)


def verify_propositions(ctx: VerificationContext, names=None) -> PropositionReport:
    """Run the exact-identity suites exhaustively over all exponents of every
    order l, 2l, l^2, 2l^2.  ``names`` restricts to a subset."""
    checks = []
    for name, statement, run in IDENTITIES:
        if names is not None and name not in names:
            continue
        check = IdentityCheck(name, statement)
        run(ctx, check)
        checks.append(check)
    f = ctx.field
    return PropositionReport(l=f.l, p=f.p, r=f.r, q=f.q, gamma=f.gamma, checks=checks)
