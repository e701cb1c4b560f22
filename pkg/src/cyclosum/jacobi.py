"""Jacobi sums of order e | 2l^2 as exact elements of Z[zeta_{l^2}].

The character of order e is chi_e(gamma^t) = zeta_e^t, i.e. the 2l^2-th root
of unity raised to t * (2l^2 / e), and chi_e(0) = 0.  The trivial character
chi_e^0 is also 0 at 0, so both sums below run over v with v and its partner
nonzero.  That convention gives J_e(0, 0) = q - 2 and J_e(0, j) = -1.

Sums are O(q): one pass over precomputed index pairs, bucketing the exponent
of zeta_{2l^2} and converting the histogram into the ring at the end.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import CycInt, CycRing, cyclo_ring
from .errors import BadField, BadOrder
from .ff import FieldElement, FieldSpec, IndexTable

SHIFTED = "shifted"  # sum chi^i(v) chi^j(v + 1)
REFLECTED = "reflected"  # sum chi^i(v) chi^j(1 - v)


@dataclass(frozen=True)
class CharacterParams:
    e: int
    i: int
    j: int
    embedding_scale: int  # 2l^2 / e


@dataclass(frozen=True)
class JacobiValue:
    value: CycInt
    convention: str
    params: CharacterParams
    field: FieldSpec


def character_params(f: FieldSpec, e: int, i: int, j: int) -> CharacterParams:
    top = f.e_max
    if e < 1 or top % e:
        raise BadOrder(f"order e = {e} does not divide 2l^2 = {top}")
    if (f.q - 1) % e:
        raise BadField(f"q = {f.q} is not 1 mod e = {e}")
    return CharacterParams(e=e, i=i % e, j=j % e, embedding_scale=top // e)


def _sum(pairs, ring: CycRing, top: int, params: CharacterParams) -> CycInt:
    a = params.i * params.embedding_scale
    b = params.j * params.embedding_scale
    counts = [0] * top
    for s, t in pairs:
        counts[(a * s + b * t) % top] += 1
    return ring.from_2l2_counts(counts)


def jacobi_sum(f: FieldSpec, t: IndexTable, e: int, i: int, j: int) -> JacobiValue:
    """J_e(i, j) = sum over v of chi_e^i(v) chi_e^j(v + 1)."""
    params = character_params(f, e, i, j)
    value = _sum(t.shift_pairs, cyclo_ring(f.l), f.e_max, params)
    return JacobiValue(value, SHIFTED, params, f)


def jacobi_sum_reflected(f: FieldSpec, t: IndexTable, e: int, i: int, j: int) -> JacobiValue:
    """J_e(chi^i, chi^j) = sum over v of chi_e^i(v) chi_e^j(1 - v)."""
    params = character_params(f, e, i, j)
    value = _sum(t.reflect_pairs, cyclo_ring(f.l), f.e_max, params)
    return JacobiValue(value, REFLECTED, params, f)


def chi_eval(f: FieldSpec, t: IndexTable, e: int, i: int, x: FieldElement) -> CycInt:
    ring = cyclo_ring(f.l)
    code = f.encode(x)
    if code == 0:
        return ring.zero
    params = character_params(f, e, i, 0)
    return ring.zeta_2l2_pow(t.logs[code] * params.i * params.embedding_scale)


def chi_minus_one(f: FieldSpec, e: int) -> CycInt:
    """chi_e(-1); ind(-1) = (q - 1) / 2."""
    scale = character_params(f, e, 1, 0).embedding_scale
    return cyclo_ring(f.l).zeta_2l2_pow((f.q - 1) // 2 * scale)
