"""
균등 매트로이드의 닫힌 형태 클래스 공식

행렬 궤도 폐포 X_v (v 의 최대 소행렬식이 모두 0 이 아님) 의 동변 클래스,
그 고정점 국소화, Cauchy 항등식 변형, Klyachko 계수, 차수 공식을 계산합니다.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Sequence, Tuple

from app.orbit.errors import ShapeConstraint, TransposeOverflow
from app.orbit.exactpoly import Poly, VarSpace
from app.orbit.symfunc import (
    EvalArgs,
    Partition,
    SchurExpansion,
    is_u_symmetric,
    lr_coeff,
    omega_transpose,
    partitions_in_box,
    rect_complement,
    schur_expand,
    schur_in_u,
    schur_poly,
    schur_principal,
    schur_value,
)

logger = logging.getLogger(__name__)

COMPLEMENT_TRANSPOSED = 'transposed'
COMPLEMENT_LITERAL = 'literal'


@dataclass(frozen=True)
class AmbientClass:
    """Z[u_1..u_r, t_1..t_n] 의 u-대칭 클래스"""

    value: Poly

    @property
    def varspace(self) -> VarSpace:
        return self.value.varspace

    @property
    def r(self) -> int:
        return self.varspace.r

    @property
    def n(self) -> int:
        return self.varspace.n

    def is_symmetric(self) -> bool:
        return is_u_symmetric(self.value)

    def max_u_degree(self) -> int:
        """u-변수별 차수의 최댓값 (대칭이므로 u_r 의 차수와 같음)"""
        return max(self.value.u_degree(k) for k in range(1, self.r + 1))

    def within_width_bound(self) -> bool:
        return self.max_u_degree() <= self.n - self.r

    def schur(self) -> SchurExpansion:
        return schur_expand(self.value)

    def render(self) -> str:
        return self.schur().render()

    def to_json(self) -> dict:
        return {
            'r': self.r,
            'n': self.n,
            'value': self.value.to_json(),
            'schur': self.schur().to_json(),
        }


def _require_size(r: int, n: int):
    if not 1 <= r < n:
        raise ShapeConstraint(f'need 1 <= r < n, got r={r}, n={n}', {'r': r, 'n': n})


def _sum_box(r: int, n: int) -> List[Partition]:
    """(r-1) x (n-r-1) 직사각형의 분할"""
    return partitions_in_box(r - 1, n - r - 1)


def _complement_partner(lam: Partition, r: int, n: int, complement: str) -> Partition:
    tilde = rect_complement(lam, r - 1, n - r - 1)
    if complement == COMPLEMENT_TRANSPOSED:
        return tilde.conjugate()
    if complement == COMPLEMENT_LITERAL:
        return tilde
    raise ValueError(f'unknown complement variant: {complement}')


def uniform_orbit_localized(r: int, n: int, basis: Sequence[int], complement: str = COMPLEMENT_TRANSPOSED) -> Poly:
    """균등 궤도 클래스의 x_B 국소화 (닫힌 형태)

    sum_λ s_λ(-t_i : i in B) s_μ(t_j : j not in B), λ 는 (r-1)x(n-r-1) 상자.
    complement='transposed' 이면 μ = λ~', 'literal' 이면 μ = λ~ 입니다.
    순열 합과 일치하는 쪽은 'transposed' 이며, 'literal' 은 (2,5) 부터 어긋납니다.

    Args:
        r: 계수
        n: 접지 집합 크기
        basis: r-부분집합 B
        complement: 여분할 변형

    Returns:
        Poly: t-다항식
    """
    _require_size(r, n)
    varspace = VarSpace(r, n)
    inside = sorted(basis)
    outside = [j for j in range(1, n + 1) if j not in set(inside)]
    total = Poly.zero(varspace)
    for lam in _sum_box(r, n):
        partner = _complement_partner(lam, r, n, complement)
        total = total + (
            schur_poly(lam, EvalArgs.t_vars(inside, -1), varspace)
            * schur_poly(partner, EvalArgs.t_vars(outside), varspace)
        )
    return total


def uniform_orbit_localized_value(
    r: int, n: int, basis: Sequence[int], t_values: Sequence, complement: str = COMPLEMENT_TRANSPOSED
) -> Fraction:
    _require_size(r, n)
    inside = sorted(basis)
    outside = [j for j in range(1, n + 1) if j not in set(inside)]
    point = [Fraction(v) for v in t_values]
    return sum(
        (schur_value(lam, [-point[i - 1] for i in inside])
         * schur_value(_complement_partner(lam, r, n, complement), [point[j - 1] for j in outside])
         for lam in _sum_box(r, n)),
        Fraction(0),
    )


def _subpartitions(outer: Partition) -> List[Partition]:
    return [p for p in partitions_in_box(outer.length, outer.width) if outer.contains(p)]


def _lr_pairs(outer: Partition):
    """c^{outer}_{μν} != 0 인 (μ, ν, c)"""
    inner = _subpartitions(outer)
    for mu in inner:
        for nu in inner:
            if mu.size + nu.size == outer.size:
                coeff = lr_coeff(mu, nu, outer)
                if coeff:
                    yield mu, nu, coeff


def uniform_matrix_class_lr(r: int, n: int) -> AmbientClass:
    """[X_v]_G = sum c^{λ~}_{μν} s_λ(u) s_{μ'}(t) s_ν(u)"""
    _require_size(r, n)
    varspace = VarSpace(r, n)
    t_args = EvalArgs.t_vars(range(1, n + 1))
    total = Poly.zero(varspace)
    for lam in _sum_box(r, n):
        tilde = rect_complement(lam, r - 1, n - r - 1)
        s_lam = schur_in_u(lam, varspace)
        for mu, nu, coeff in _lr_pairs(tilde):
            total = total + s_lam * schur_poly(mu.conjugate(), t_args, varspace) * schur_in_u(nu, varspace) * coeff
    logger.debug('lr class (%d,%d) has %d terms', r, n, len(total.terms()))
    return AmbientClass(total)


def _double_u(shape: Partition, varspace: VarSpace) -> Poly:
    """s_shape(u, u) = sum c^{shape}_{γδ} s_γ(u) s_δ(u)"""
    total = Poly.zero(varspace)
    for gamma, delta, coeff in _lr_pairs(shape):
        total = total + schur_in_u(gamma, varspace) * schur_in_u(delta, varspace) * coeff
    return total


def uniform_matrix_class_omega(r: int, n: int) -> AmbientClass:
    """omega(s_R(u, u, t)), R = (r-1)^{n-r-1}

    s_R(u,u,t) = sum c^R_{αβ} s_α(u,u) s_β(t) 에서 u-측만 전치합니다.
    """
    _require_size(r, n)
    varspace = VarSpace(r, n)
    rectangle = Partition.of([r - 1] * (n - r - 1))
    t_args = EvalArgs.t_vars(range(1, n + 1))
    total = Poly.zero(varspace)
    for alpha, beta, coeff in _lr_pairs(rectangle):
        transposed = alpha.conjugate()
        if transposed.length > r:
            raise TransposeOverflow(f'transpose of {alpha} has more than r={r} parts')
        total = total + _double_u(transposed, varspace) * schur_poly(beta, t_args, varspace) * coeff
    return AmbientClass(total)


def cauchy_sides(size_t: int, size_v: int) -> Tuple[Poly, Poly]:
    """prod_{t in T, v in V} (t - v) 와 sum c^{(|V|)^{|T|}}_{νμ} s_ν(T) s_{μ'}(-V)"""
    if not (1 <= size_t <= 4 and 1 <= size_v <= 4):
        raise ShapeConstraint(f'cauchy_check supports sizes 1..4, got ({size_t}, {size_v})')
    size = max(size_t, size_v)
    # T 는 t-변수, V 는 u-변수 자리를 빌려 씀
    varspace = VarSpace(size, size)
    left = Poly.one(varspace)
    for i in range(1, size_t + 1):
        for k in range(1, size_v + 1):
            left = left * (Poly.t(varspace, i) - Poly.u(varspace, k))
    rectangle = Partition.of([size_v] * size_t)
    t_args = EvalArgs.t_vars(range(1, size_t + 1))
    v_args = EvalArgs.u_vars(size_v, -1)
    right = Poly.zero(varspace)
    for nu, mu, coeff in _lr_pairs(rectangle):
        right = right + schur_poly(nu, t_args, varspace) * schur_poly(mu.conjugate(), v_args, varspace) * coeff
    return left, right


def cauchy_check(size_t: int, size_v: int) -> bool:
    left, right = cauchy_sides(size_t, size_v)
    return left == right


def q_localization_sides(nu: Partition, r: int, n: int) -> Tuple[SchurExpansion, SchurExpansion]:
    """s_ν(u, t) 를 Schur 전개한 뒤 u-측을 전치한 것과 LR 계수로 쓴 합

    왼쪽: omega(schur_expand(s_ν(u_1..u_r, t_1..t_n)))
    오른쪽: sum_{λ,μ} c^ν_{λμ} s_λ(t) s_{μ'}(u)

    Raises:
        ShapeConstraint: r, n 이 1 <= r < n 이 아닌 경우
        TransposeOverflow: ν 의 폭이 r 을 넘는 경우
    """
    _require_size(r, n)
    varspace = VarSpace(r, n)
    t_args = EvalArgs.t_vars(range(1, n + 1))
    left = omega_transpose(schur_expand(schur_poly(nu, EvalArgs.u_vars(r) + t_args, varspace)))
    coefficients: Dict[Partition, Poly] = {}
    for lam, mu, coeff in _lr_pairs(nu):
        # s_μ(u_1..u_r) = 0
        if mu.length > r:
            continue
        if mu.width > r:
            raise TransposeOverflow(f'transpose of {mu} has more than r={r} parts', {'partition': mu.to_json()})
        key = mu.conjugate()
        coefficients[key] = coefficients.get(key, Poly.zero(varspace)) + schur_poly(lam, t_args, varspace) * coeff
    return left, SchurExpansion(varspace, coefficients)


def q_localization_check(nu: Partition, r: int, n: int) -> bool:
    left, right = q_localization_sides(nu, r, n)
    return left == right


def _require_klyachko_shape(lam: Partition, r: int, n: int):
    _require_size(r, n)
    if not lam.fits(r, n - r) or lam.size != n - 1:
        raise ShapeConstraint(
            f'{lam} must be a partition of n-1={n - 1} inside the {r}x{n - r} box',
            {'partition': lam.to_json(), 'r': r, 'n': n},
        )


def klyachko_terms(lam: Partition, r: int, n: int, start_index: int) -> List[Dict[str, int]]:
    _require_klyachko_shape(lam, r, n)
    if start_index not in (0, 1):
        raise ShapeConstraint(f'start index must be 0 or 1, got {start_index}')
    terms = []
    for i in range(start_index, r + 1):
        weight = (-1) ** i * comb(n, i)
        principal = schur_principal(lam, r - i)
        terms.append({'i': i, 'weight': weight, 'schur_principal': principal, 'term': weight * principal})
    return terms


def klyachko_coefficient(lam: Partition, r: int, n: int, start_index: int) -> int:
    """sum_{i=start}^{r} (-1)^i C(n,i) s_λ(1^{r-i})

    start_index=1 은 공식 그대로, 0 은 i=0 항을 포함한 변형입니다.
    """
    return sum(term['term'] for term in klyachko_terms(lam, r, n, start_index))


def uniform_degree_terms(r: int, n: int) -> List[Dict]:
    _require_size(r, n)
    terms = []
    for lam in _sum_box(r, n):
        tilde = rect_complement(lam, r - 1, n - r - 1)
        left, right = schur_principal(lam, r), schur_principal(tilde, r)
        terms.append({'partition': lam.to_json(), 'complement': tilde.to_json(), 'term': left * right})
    return terms


def uniform_degree(r: int, n: int) -> int:
    """deg X_v = sum_λ s_λ(1^r) s_{λ~}(1^r)"""
    return sum(term['term'] for term in uniform_degree_terms(r, n))


def gl_class(r: int, n: int) -> Poly:
    """t = 0 특수화: sum_λ s_λ(u) s_{λ~}(u)"""
    _require_size(r, n)
    varspace = VarSpace(r, n)
    total = Poly.zero(varspace)
    for lam in _sum_box(r, n):
        tilde = rect_complement(lam, r - 1, n - r - 1)
        total = total + schur_in_u(lam, varspace) * schur_in_u(tilde, varspace)
    return total
