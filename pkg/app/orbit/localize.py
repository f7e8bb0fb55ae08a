"""
고정점 국소화 엔진

토러스 궤도 폐포의 Chow / K-이론 클래스를 고정점 x_B 에서 계산합니다.

- 순열 합: lex-first 기저가 B 인 순열 (i_1..i_n) 마다
  1 / ((t_{i_2} - t_{i_1}) ... (t_{i_n} - t_{i_{n-1}})) 을 더하고
  prod_{i in B, j not in B} (t_j - t_i) 를 곱합니다.
- 순열 합은 (마지막 원소, 사용한 원소 집합) 상태의 메모이즈 점화식으로
  접두사를 공유하며 누적합니다.
- 매트로이드가 직합으로 분해되면 각 블록의 순열 합과 블록 사이
  법선 가중치의 곱을 사용합니다 (연결 매트로이드에서는 순열 합 그대로).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple

from app.orbit.errors import (
    CodimMismatch,
    DenominatorRemains,
    InternalNonPolynomial,
    NotHomogeneous,
    NotUniform,
    VarSpaceMismatch,
)
from app.orbit.exactpoly import (
    LaurentFraction,
    LinFormFraction,
    Poly,
    VarSpace,
    frac_to_poly,
    lowest_form,
)
from app.orbit.matroid import Matroid, is_uniform, mask_of, subset_of, validate_subset

logger = logging.getLogger(__name__)

Basis = Tuple[int, ...]


@dataclass(frozen=True)
class GKMTuple:
    """모든 r-부분집합 B 에 t-다항식을 대응시킨 튜플"""

    r: int
    n: int
    values: Dict[Basis, Poly] = field(default_factory=dict)

    def __post_init__(self):
        missing = [B for B in combinations(range(1, self.n + 1), self.r) if B not in self.values]
        if missing:
            raise VarSpaceMismatch(f'tuple is missing {len(missing)} fixed points, e.g. {list(missing[0])}')
        # 영이 아닌 항목은 모두 같은 차수의 동차식
        inhomogeneous = [list(B) for B, p in sorted(self.values.items()) if not p.is_homogeneous()]
        degrees = sorted({p.total_degree() for p in self.values.values() if p})
        if inhomogeneous or len(degrees) > 1:
            raise NotHomogeneous(
                'tuple entries must be homogeneous of one common degree',
                {'degrees': degrees, 'inhomogeneous_at': inhomogeneous[:5]},
            )

    @property
    def varspace(self) -> VarSpace:
        return VarSpace(self.r, self.n)

    def __getitem__(self, basis: Sequence[int]) -> Poly:
        return self.values[tuple(sorted(basis))]

    def items(self) -> List[Tuple[Basis, Poly]]:
        return sorted(self.values.items())

    def with_value(self, basis: Sequence[int], value: Poly) -> 'GKMTuple':
        values = dict(self.values)
        values[tuple(sorted(basis))] = value
        return GKMTuple(self.r, self.n, values)

    def degrees(self) -> List[int]:
        return sorted({p.total_degree() for _, p in self.items() if p})

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.values.values())

    def to_json(self) -> List[dict]:
        return [{'basis': list(B), 'value': p.to_json()} for B, p in self.items()]

    @classmethod
    def from_json(cls, r: int, n: int, entries: Sequence[dict]) -> 'GKMTuple':
        varspace = VarSpace(r, n)
        values = {tuple(sorted(entry['basis'])): Poly.from_json(varspace, entry['value']) for entry in entries}
        return cls(r, n, values)

    @classmethod
    def constant(cls, r: int, n: int, value: Poly) -> 'GKMTuple':
        return cls(r, n, {B: value for B in combinations(range(1, n + 1), r)})


@dataclass(frozen=True)
class KLocalization:
    r: int
    n: int
    values: Dict[Basis, LaurentFraction] = field(default_factory=dict)


# ----------------------------------------------------------------------
# 직합 블록
# ----------------------------------------------------------------------
@lru_cache(maxsize=256)
def _direct_sum_blocks(m: Matroid) -> Tuple[Tuple[int, ...], ...]:
    """공통 circuit 관계의 동치류 (기저 한 원소 교환으로 판정)"""
    parent = list(range(m.n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for basis in m.bases:
        inside = subset_of(basis)
        outside = [j for j in range(1, m.n + 1) if not basis >> (j - 1) & 1]
        for e in inside:
            dropped = basis & ~(1 << (e - 1))
            for f in outside:
                if dropped | (1 << (f - 1)) in m.bases:
                    parent[find(e)] = find(f)

    blocks: Dict[int, List[int]] = {}
    for element in range(1, m.n + 1):
        blocks.setdefault(find(element), []).append(element)
    return tuple(tuple(block) for block in sorted(blocks.values()))


def orbit_dimension(m: Matroid) -> int:
    """토러스 궤도의 차원 n - (직합 블록 수)"""
    return m.n - len(_direct_sum_blocks(m))


def orbit_codimension(m: Matroid) -> int:
    return m.r * (m.n - m.r) - orbit_dimension(m)


# ----------------------------------------------------------------------
# 순열 합 점화식
# ----------------------------------------------------------------------
def _chain_sum(m: Matroid, block: Sequence[int], target: int, edge: Callable, one, zero):
    """block 의 순열 중 lex-first 기저가 target 인 것들에 대한 사슬 곱의 합

    edge(last, x) 는 연속한 두 원소 사이의 인수입니다.
    """
    block_mask = mask_of(block)

    def admissible(kept: int, x: int) -> bool:
        bit = 1 << (x - 1)
        if target & bit:
            return True
        return not m.is_independent(kept | bit)

    @lru_cache(maxsize=None)
    def suffix(last: int, used: int):
        if used == block_mask:
            return one
        kept = used & target
        total = zero
        for x in block:
            bit = 1 << (x - 1)
            if used & bit or not admissible(kept, x):
                continue
            total = total + edge(last, x) * suffix(x, used | bit)
        return total

    total = zero
    for x in block:
        if admissible(0, x):
            total = total + suffix(x, 1 << (x - 1))
    suffix.cache_clear()
    return total


def _outside(n: int, basis: Sequence[int]) -> List[int]:
    inside = set(basis)
    return [j for j in range(1, n + 1) if j not in inside]


def _block_of(blocks: Sequence[Sequence[int]]) -> Dict[int, int]:
    return {element: index for index, block in enumerate(blocks) for element in block}


def _chow_block(m: Matroid, varspace: VarSpace, block: Sequence[int], basis: Sequence[int]) -> LinFormFraction:
    target = mask_of(basis)
    inside = [i for i in block if target >> (i - 1) & 1]
    outside = [j for j in block if not target >> (j - 1) & 1]
    prefactor = Poly.one(varspace)
    for i in inside:
        for j in outside:
            prefactor = prefactor * (Poly.t(varspace, j) - Poly.t(varspace, i))

    one = LinFormFraction.one(varspace)

    def edge(last: int, x: int) -> LinFormFraction:
        return LinFormFraction.over_difference(Poly.one(varspace), x, last)

    chain = _chain_sum(m, block, target, edge, one, LinFormFraction.zero(varspace))
    return LinFormFraction.of_poly(prefactor) * chain


def _to_poly(fraction: LinFormFraction, context: str) -> Poly:
    try:
        return frac_to_poly(fraction)
    except DenominatorRemains as error:
        raise InternalNonPolynomial(f'{context} did not reduce to a polynomial: {fraction}') from error


def lemma_sum_raw(m: Matroid, basis: Sequence[int]) -> Poly:
    """직합 분해 없이 접지 집합 전체에서 계산한 순열 합"""
    basis = validate_subset(m, basis)
    varspace = VarSpace(m.r, m.n)
    if mask_of(basis) not in m.bases:
        return Poly.zero(varspace)
    value = _chow_block(m, varspace, tuple(range(1, m.n + 1)), basis)
    return _to_poly(value, f'permutation sum at {list(basis)}')


def orbit_chow_localization(m: Matroid, basis: Sequence[int]) -> Poly:
    """[Y]_T|_{x_B}

    Args:
        m: 매트로이드
        basis: r-부분집합 B

    Returns:
        Poly: t-다항식 (B 가 기저가 아니면 0)
    """
    basis = validate_subset(m, basis)
    varspace = VarSpace(m.r, m.n)
    if mask_of(basis) not in m.bases:
        return Poly.zero(varspace)
    blocks = _direct_sum_blocks(m)
    block_of = _block_of(blocks)
    value = Poly.one(varspace)
    for i in basis:
        for j in _outside(m.n, basis):
            if block_of[i] != block_of[j]:
                value = value * (Poly.t(varspace, j) - Poly.t(varspace, i))
    for block in blocks:
        part = _chow_block(m, varspace, block, basis)
        value = value * _to_poly(part, f'localization at {list(basis)}')
    logger.debug('chow localization at %s: %s', list(basis), value)
    return value


def orbit_chow_localization_value(m: Matroid, basis: Sequence[int], t_values: Sequence) -> Fraction:
    """orbit_chow_localization 의 정확한 수치값 (기호 정리 없이)"""
    basis = validate_subset(m, basis)
    if mask_of(basis) not in m.bases:
        return Fraction(0)
    point = [Fraction(v) for v in t_values]
    target = mask_of(basis)
    value = Fraction(1)
    for i in basis:
        for j in _outside(m.n, basis):
            value *= point[j - 1] - point[i - 1]

    def edge(last: int, x: int) -> Fraction:
        return 1 / (point[x - 1] - point[last - 1])

    # 블록 안팎의 모든 쌍이 위 곱에 들어 있으므로 블록별로는 사슬 합만 곱함
    for block in _direct_sum_blocks(m):
        value *= _chain_sum(m, block, target, edge, Fraction(1), Fraction(0))
    return value


def orbit_chow_localization_telescoped(m: Matroid, basis: Sequence[int]) -> Poly:
    """균등 매트로이드의 망원 형태

    prefactor * sum_{b in B} prod_{i in B-b} 1/(t_b - t_i) prod_{j not in B} 1/(t_j - t_b)
    """
    if not is_uniform(m) or not 1 <= m.r < m.n:
        raise NotUniform('telescoped localization requires a uniform matroid with 1 <= r < n')
    basis = validate_subset(m, basis)
    varspace = VarSpace(m.r, m.n)
    outside = _outside(m.n, basis)
    prefactor = Poly.one(varspace)
    for i in basis:
        for j in outside:
            prefactor = prefactor * (Poly.t(varspace, j) - Poly.t(varspace, i))

    one = Poly.one(varspace)
    total = LinFormFraction.zero(varspace)
    for b in basis:
        term = LinFormFraction.one(varspace)
        for i in basis:
            if i != b:
                term = term * LinFormFraction.over_difference(one, b, i)
        for j in outside:
            term = term * LinFormFraction.over_difference(one, j, b)
        total = total + term
    return _to_poly(LinFormFraction.of_poly(prefactor) * total, f'telescoped sum at {list(basis)}')


def orbit_chow_localization_telescoped_value(m: Matroid, basis: Sequence[int], t_values: Sequence) -> Fraction:
    """망원 형태의 정확한 수치값 (t-좌표는 서로 달라야 함)"""
    if not is_uniform(m) or not 1 <= m.r < m.n:
        raise NotUniform('telescoped localization requires a uniform matroid with 1 <= r < n')
    basis = validate_subset(m, basis)
    point = [Fraction(v) for v in t_values]
    outside = _outside(m.n, basis)
    prefactor = Fraction(1)
    for i in basis:
        for j in outside:
            prefactor *= point[j - 1] - point[i - 1]
    total = Fraction(0)
    for b in basis:
        term = Fraction(1)
        for i in basis:
            if i != b:
                term /= point[b - 1] - point[i - 1]
        for j in outside:
            term /= point[j - 1] - point[b - 1]
        total += term
    return prefactor * total


def orbit_k_localization(m: Matroid, basis: Sequence[int]) -> LaurentFraction:
    """K-이론 클래스의 x_B 국소화

    (1 - t_j/t_i) 인수마다 t_i 를 곱해 분모를 지우고, 그 단항식은
    offsets 에 음의 지수로 기록합니다.
    """
    basis = validate_subset(m, basis)
    varspace = VarSpace(m.r, m.n)
    if mask_of(basis) not in m.bases:
        return LaurentFraction.of_poly(Poly.zero(varspace))
    target = mask_of(basis)
    offsets = [0] * m.n
    numerator = Poly.one(varspace)
    for i in basis:
        for j in _outside(m.n, basis):
            offsets[i - 1] -= 1
            numerator = numerator * (Poly.t(varspace, i) - Poly.t(varspace, j))

    def edge(last: int, x: int) -> LinFormFraction:
        return LinFormFraction.over_difference(Poly.t(varspace, last), last, x)

    chains = LinFormFraction.of_poly(numerator)
    for block in _direct_sum_blocks(m):
        chains = chains * _chain_sum(
            m, block, target, edge, LinFormFraction.one(varspace), LinFormFraction.zero(varspace)
        )
    value = _to_poly(chains, f'K-theory localization at {list(basis)}')
    return LaurentFraction(value, Poly.one(varspace), tuple(offsets))


def kms_chow_from_k(k: LaurentFraction, expected_codim: int) -> Poly:
    """t_i -> 1 - t_i 치환 후 최저차 성분의 비로 Chow 국소화를 얻습니다.

    단항식 인수 t^e 는 (1 - t)^e 가 되어 최저차 성분 1 을 줍니다.
    """
    varspace = k.varspace
    flip = {f't{j}': 1 - Poly.t(varspace, j) for j in range(1, varspace.n + 1)}
    num_degree, num_form = lowest_form(k.numerator.substitute(flip))
    den_degree, den_form = lowest_form(k.denominator.substitute(flip))
    result = num_form.exact_quotient(den_form)
    degree = num_degree - den_degree
    if degree != expected_codim:
        raise CodimMismatch(
            f'lowest degree {degree} differs from the expected codimension {expected_codim}',
            {'degree': degree, 'expected_codim': expected_codim},
        )
    return result


def full_orbit_tuple(m: Matroid, workers: int = 1) -> GKMTuple:
    """모든 r-부분집합에서의 Chow 국소화

    기저마다 독립적인 계산이므로 workers > 1 이면 스레드 풀에 나눠 맡깁니다.
    """
    subsets = list(combinations(range(1, m.n + 1), m.r))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda B: orbit_chow_localization(m, B), subsets))
    else:
        values = [orbit_chow_localization(m, B) for B in subsets]
    logger.info('full orbit tuple: n=%d r=%d, %d fixed points', m.n, m.r, len(subsets))
    return GKMTuple(m.r, m.n, dict(zip(subsets, values)))


def full_k_localization(m: Matroid) -> KLocalization:
    subsets = list(combinations(range(1, m.n + 1), m.r))
    return KLocalization(m.r, m.n, {B: orbit_k_localization(m, B) for B in subsets})


def gkm_edges(r: int, n: int) -> List[Tuple[Basis, Basis, int, int]]:
    """모든 r-부분집합 사이의 한 원소 교환 (B, B - i + j, i, j), B < B'"""
    edges = []
    for basis in combinations(range(1, n + 1), r):
        for i in basis:
            for j in _outside(n, basis):
                neighbor = tuple(sorted(set(basis) - {i} | {j}))
                if neighbor > basis:
                    edges.append((basis, neighbor, i, j))
    return edges


def gkm_check(f: GKMTuple) -> List[dict]:
    """모든 간선 (B, B - i + j) 에서 f_B - f_{B'} 이 t_j := t_i 로 0 이 되는지 검사"""
    varspace = f.varspace
    violations = []
    for basis, neighbor, i, j in gkm_edges(f.r, f.n):
        difference = f.values[basis] - f.values[neighbor]
        if difference.substitute({f't{j}': Poly.t(varspace, i)}):
            violations.append({'basis': list(basis), 'neighbor': list(neighbor), 'i': i, 'j': j})
    if violations:
        logger.debug('gkm_check found %d violations', len(violations))
    return violations
