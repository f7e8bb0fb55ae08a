"""
분할 사상(splitting) 모듈

토러스 동변 클래스(GKM 튜플)와 행렬 공간의 동변 클래스 사이를 오갑니다.

- factorial_expand / lift: factorial Schur (행렬 Schubert) 기저 전개와 그 역
- restrict_ambient / tuple_of_ambient: u_k -> eps_u * t_{b_k} 국소화
- schubert_expand_tuple: Schubert 튜플에 대한 삼각 소거
- resolve_convention: t-부호 규약을 GKM 조건과 인자 지지 조건으로 결정
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Sequence, Union

from app.orbit.classes import AmbientClass
from app.orbit.errors import (
    NoConsistentConvention,
    NotDivisible,
    NotInSpan,
    NotSymmetric,
    OverflowNonEmpty,
    ShapeOutOfBox,
)
from app.orbit.exactpoly import Poly, VarSpace
from app.orbit.localize import GKMTuple, full_orbit_tuple, gkm_check
from app.orbit.matroid import Matroid
from app.orbit.symfunc import (
    Partition,
    SchurExpansion,
    factorial_schur,
    is_u_symmetric,
    partitions_in_box,
    rect_complement,
    schur_expand,
    schur_in_u,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RestrictionConvention:
    eps_u: int = -1
    eps_t: int = -1

    def to_json(self) -> dict:
        return {'eps_u': self.eps_u, 'eps_t': self.eps_t}


@dataclass(frozen=True)
class SchubertExpansion:
    """sum_λ q_λ(t) [X_λ]_G + overflow"""

    varspace: VarSpace
    coefficients: Dict[Partition, Poly] = field(default_factory=dict)
    overflow: Optional[SchurExpansion] = None
    t_sign: int = -1
    convention: Optional[RestrictionConvention] = None

    def __post_init__(self):
        r, n = self.varspace.r, self.varspace.n
        for lam in self.coefficients:
            if not lam.fits(r, n - r):
                raise ShapeOutOfBox(f'{lam} does not fit in the {r}x{n - r} box')

    def items(self):
        return sorted(((lam, q) for lam, q in self.coefficients.items() if q), key=lambda item: item[0].sort_key())

    def coefficient(self, lam: Partition) -> Poly:
        return self.coefficients.get(lam, Poly.zero(self.varspace))

    def has_overflow(self) -> bool:
        return self.overflow is not None and not self.overflow.is_empty()

    def __eq__(self, other):
        if not isinstance(other, SchubertExpansion):
            return NotImplemented
        return (
            self.varspace == other.varspace
            and self.items() == other.items()
            and self.has_overflow() == other.has_overflow()
            and (not self.has_overflow() or self.overflow == other.overflow)
        )

    def to_json(self) -> dict:
        convention = self.convention or RestrictionConvention(eps_t=self.t_sign)
        return {
            'coefficients': [{'partition': lam.to_json(), 'coeff': q.to_json()} for lam, q in self.items()],
            'overflow': self.overflow.to_json() if self.overflow else [],
            'convention': convention.to_json(),
        }

    def render(self) -> str:
        parts = [f'({q})*[X{lam}]' for lam, q in self.items()]
        if self.has_overflow():
            parts.append(self.overflow.render())
        return ' + '.join(parts) or '0'


def _as_poly(c: Union[AmbientClass, Poly]) -> Poly:
    return c.value if isinstance(c, AmbientClass) else c


def factorial_expand(c: Union[AmbientClass, Poly], t_sign: int = -1) -> SchubertExpansion:
    """u-차수가 높은 쪽부터 factorial Schur 기저로 전개합니다.

    최고 u-차수 동차 성분을 Schur 전개한 뒤, 상자에 들어가는 λ 는
    factorial Schur 를, λ_1 > n-r 인 λ 는 s_λ(u) 를 빼서 overflow 에 둡니다.
    """
    value = _as_poly(c)
    if not is_u_symmetric(value):
        raise NotSymmetric(f'class is not symmetric in u: {value}')
    varspace = value.varspace
    r, n = varspace.r, varspace.n
    coefficients: Dict[Partition, Poly] = {}
    overflow: Dict[Partition, Poly] = {}
    remaining = value
    while remaining:
        top = remaining.u_homogeneous_part(remaining.u_total_degree())
        for lam, q in schur_expand(top).items():
            if lam.width <= n - r:
                coefficients[lam] = coefficients.get(lam, Poly.zero(varspace)) + q
                remaining = remaining - q * factorial_schur(lam, r, n, t_sign, varspace)
            else:
                overflow[lam] = overflow.get(lam, Poly.zero(varspace)) + q
                remaining = remaining - q * schur_in_u(lam, varspace)
    return SchubertExpansion(varspace, coefficients, SchurExpansion(varspace, overflow), t_sign)


def lift(e: SchubertExpansion, t_sign: Optional[int] = None) -> AmbientClass:
    """sum q_λ [X_λ]_G"""
    if e.has_overflow():
        raise OverflowNonEmpty(
            'cannot lift an expansion with Schur terms outside the box',
            {'overflow': e.overflow.to_json()},
        )
    sign = e.t_sign if t_sign is None else t_sign
    varspace = e.varspace
    total = Poly.zero(varspace)
    for lam, q in e.items():
        total = total + q * factorial_schur(lam, varspace.r, varspace.n, sign, varspace)
    return AmbientClass(total)


def restrict_ambient(c: Union[AmbientClass, Poly], basis: Sequence[int], conv: RestrictionConvention) -> Poly:
    """u_k -> eps_u * t_{b_k} (B 오름차순)"""
    value = _as_poly(c)
    varspace = value.varspace
    ordered = sorted(basis)
    return value.substitute({
        f'u{k}': Poly.t(varspace, b) * conv.eps_u for k, b in enumerate(ordered, start=1)
    })


def tuple_of_ambient(c: Union[AmbientClass, Poly], conv: RestrictionConvention) -> GKMTuple:
    value = _as_poly(c)
    r, n = value.varspace.r, value.varspace.n
    return GKMTuple(r, n, {
        B: restrict_ambient(value, B, conv) for B in combinations(range(1, n + 1), r)
    })


@lru_cache(maxsize=None)
def schubert_tuple(lam: Partition, r: int, n: int, conv: RestrictionConvention) -> GKMTuple:
    """[X_λ]_G 를 국소화한 Schubert 클래스 튜플"""
    if not lam.fits(r, n - r):
        raise ShapeOutOfBox(f'{lam} does not fit in the {r}x{n - r} box')
    return tuple_of_ambient(factorial_schur(lam, r, n, conv.eps_t), conv)


def _convention_holds(r: int, n: int, conv: RestrictionConvention) -> bool:
    for lam in partitions_in_box(r, n - r):
        if gkm_check(schubert_tuple(lam, r, n, conv)):
            return False
    divisor_shape = Partition((1,))
    if not divisor_shape.fits(r, n - r):
        # r = n 이면 상자가 비어 인자 클래스가 없음
        return True
    divisor = schubert_tuple(divisor_shape, r, n, conv)
    return sum(1 for _, value in divisor.items() if value.is_zero()) == 1


@lru_cache(maxsize=None)
def resolve_convention(r: int, n: int) -> RestrictionConvention:
    """eps_u = -1 고정, eps_t 는 두 조건을 만족하는 값 (둘 다 되면 -1)

    조건: 모든 Schubert 튜플이 GKM 조건을 만족하고, 인자 클래스 (λ=(1))
    튜플이 정확히 한 기저에서만 0 이 됩니다.
    """
    candidates = [
        RestrictionConvention(-1, eps_t) for eps_t in (-1, 1)
        if _convention_holds(r, n, RestrictionConvention(-1, eps_t))
    ]
    if not candidates:
        raise NoConsistentConvention(f'no t-sign makes the Schubert tuples consistent at ({r},{n})')
    logger.debug('resolved convention at (%d,%d): %s', r, n, candidates[0])
    return candidates[0]


def schubert_expand_tuple(f: GKMTuple, conv: RestrictionConvention) -> SchubertExpansion:
    """[Y]_T = sum q_λ [Ω_λ]_T 를 삼각 소거로 구합니다.

    Args:
        f: GKM 조건을 만족하는 튜플
        conv: 국소화 규약

    Returns:
        SchubertExpansion: q_λ(t) 계수 (lift 로 행렬 공간 클래스를 얻음)

    Raises:
        NotInSpan: 피벗을 찾지 못하거나 재구성이 f 와 다른 경우
    """
    r, n = f.r, f.n
    varspace = f.varspace
    shapes = partitions_in_box(r, n - r)
    tuples = {lam: schubert_tuple(lam, r, n, conv) for lam in shapes}
    bases = sorted(f.values)
    residual = dict(f.values)
    coefficients: Dict[Partition, Poly] = {}

    for index, lam in enumerate(shapes):
        later = shapes[index + 1:]
        pivot = next(
            (B for B in bases
             if tuples[lam].values[B] and all(tuples[kappa].values[B].is_zero() for kappa in later)),
            None,
        )
        if pivot is None:
            raise NotInSpan(f'no pivot fixed point for {lam}', {'partition': lam.to_json()})
        try:
            q = residual[pivot].exact_quotient(tuples[lam].values[pivot])
        except NotDivisible as error:
            raise NotInSpan(
                f'coefficient of {lam} is not a polynomial at pivot {list(pivot)}',
                {'partition': lam.to_json(), 'pivot': list(pivot)},
            ) from error
        if q:
            coefficients[lam] = q
            for B in bases:
                residual[B] = residual[B] - q * tuples[lam].values[B]

    leftover = [list(B) for B in bases if residual[B]]
    if leftover:
        raise NotInSpan('tuple is not in the span of Schubert classes', {'mismatch_at': leftover[:5]})
    logger.debug('schubert expansion at (%d,%d): %d nonzero coefficients', r, n, len(coefficients))
    return SchubertExpansion(varspace, coefficients, SchurExpansion(varspace, {}), conv.eps_t, conv)


def reconstruct_tuple(e: SchubertExpansion, conv: RestrictionConvention) -> GKMTuple:
    """sum q_λ * schubert_tuple(λ) 를 고정점별로 계산"""
    r, n = e.varspace.r, e.varspace.n
    values = {B: Poly.zero(e.varspace) for B in combinations(range(1, n + 1), r)}
    for lam, q in e.items():
        for B, value in schubert_tuple(lam, r, n, conv).items():
            values[B] = values[B] + q * value
    return GKMTuple(r, n, values)


def lift_orbit_class(m: Matroid, workers: int = 1) -> AmbientClass:
    """full_orbit_tuple -> Schubert 전개 -> lift"""
    conv = resolve_convention(m.r, m.n)
    return lift(schubert_expand_tuple(full_orbit_tuple(m, workers), conv))


def klyachko_oracle(lam: Partition, r: int, n: int) -> int:
    """분할 사상으로 얻은 비동변 계수

    Klyachko 의 λ (n-1 의 분할) 는 r x (n-r) 상자 안의 여분할 κ 와 대응하며,
    q_κ 의 상수항을 돌려줍니다.
    """
    kappa = rect_complement(lam, r, n - r)
    conv = resolve_convention(r, n)
    expansion = schubert_expand_tuple(full_orbit_tuple(Matroid.uniform(r, n)), conv)
    return expansion.coefficient(kappa).constant_term()
