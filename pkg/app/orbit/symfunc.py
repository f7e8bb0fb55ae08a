"""
분할 / 반표준 타블로 / Schur 다항식 모듈

Schur 다항식, factorial Schur 다항식, Pieri 규칙 기반 Littlewood-Richardson
계수, u-대칭 다항식의 Schur 전개, 직사각형 여분할, u-측 전치(omega)를 제공합니다.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import prod
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy.combinatorics import Permutation

from app.orbit.errors import (
    DoesNotFit,
    NotSymmetric,
    ShapeOutOfBox,
    TransposeOverflow,
    VarSpaceMismatch,
)
from app.orbit.exactpoly import Poly, VarSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """약감소 양의 정수열 (빈 분할 = ∅)"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        if any(p <= 0 for p in self.parts):
            raise ValueError(f'partition parts must be positive: {self.parts}')
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f'partition parts must be weakly decreasing: {self.parts}')

    @classmethod
    def of(cls, parts: Iterable[int] = ()) -> 'Partition':
        """0인 성분을 제거하고 분할을 생성"""
        return cls(tuple(int(p) for p in parts if p))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def width(self) -> int:
        return self.parts[0] if self.parts else 0

    def part(self, i: int) -> int:
        """1부터 시작하는 i번째 성분 (범위 밖이면 0)"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> 'Partition':
        return Partition(tuple(
            sum(1 for p in self.parts if p >= col) for col in range(1, self.width + 1)
        ))

    def fits(self, rows: int, cols: int) -> bool:
        return self.length <= rows and self.width <= cols

    def contains(self, other: 'Partition') -> bool:
        return all(self.part(i) >= other.part(i) for i in range(1, other.length + 1))

    def cells(self) -> List[Tuple[int, int]]:
        return [(row, col) for row, p in enumerate(self.parts, start=1) for col in range(1, p + 1)]

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.size, self.parts

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __str__(self):
        return '(' + ','.join(map(str, self.parts)) + ')' if self.parts else '∅'


EMPTY = Partition()


def partitions_in_box(rows: int, cols: int) -> List[Partition]:
    """rows x cols 상자에 들어가는 모든 분할 (크기, 사전식 순)"""
    found: List[Partition] = []

    def extend(prefix: Tuple[int, ...], bound: int):
        found.append(Partition(prefix))
        if len(prefix) == rows:
            return
        for part in range(1, bound + 1):
            extend(prefix + (part,), part)

    if rows >= 0 and cols >= 0:
        extend((), cols)
    return sorted(found, key=Partition.sort_key)


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate()


@dataclass(frozen=True)
class Tableau:
    shape: Partition
    rows: Tuple[Tuple[int, ...], ...]

    def entry(self, row: int, col: int) -> int:
        return self.rows[row - 1][col - 1]

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        for row, values in enumerate(self.rows, start=1):
            for col, value in enumerate(values, start=1):
                yield row, col, value


def sst_enumerate(shape: Partition, max_entry: int) -> List[Tableau]:
    """값이 1..max_entry 인 반표준 타블로 전체

    행 방향으로 약증가, 열 방향으로 강증가합니다.
    """
    return list(_sst(shape, max_entry))


@lru_cache(maxsize=4096)
def _sst(shape: Partition, max_entry: int) -> Tuple[Tableau, ...]:
    if shape.length > max_entry:
        return ()
    cells = shape.cells()
    filling: Dict[Tuple[int, int], int] = {}
    results: List[Tableau] = []

    def fill(index: int):
        if index == len(cells):
            results.append(Tableau(shape, tuple(
                tuple(filling[(row, col)] for col in range(1, p + 1))
                for row, p in enumerate(shape.parts, start=1)
            )))
            return
        row, col = cells[index]
        low = max(filling.get((row, col - 1), 1), filling.get((row - 1, col), 0) + 1)
        # 아래쪽 행이 들어갈 자리를 남겨 둠
        high = max_entry - (shape.conjugate().part(col) - row)
        for value in range(low, high + 1):
            filling[(row, col)] = value
            fill(index + 1)
        filling.pop((row, col), None)

    fill(0)
    return tuple(results)


@dataclass(frozen=True)
class EvalArgs:
    """Schur 다항식 인자 목록

    각 항목은 ('u'|'t', index, sign) 부호 있는 변수 참조 또는 유리수 상수입니다.
    """

    items: Tuple = ()

    @classmethod
    def t_vars(cls, indices: Iterable[int], sign: int = 1) -> 'EvalArgs':
        return cls(tuple(('t', int(j), sign) for j in indices))

    @classmethod
    def u_vars(cls, count: int, sign: int = 1) -> 'EvalArgs':
        return cls(tuple(('u', k, sign) for k in range(1, count + 1)))

    @classmethod
    def constants(cls, values: Iterable) -> 'EvalArgs':
        return cls(tuple(Fraction(v) for v in values))

    def __add__(self, other: 'EvalArgs') -> 'EvalArgs':
        return EvalArgs(self.items + other.items)

    def __len__(self):
        return len(self.items)

    def to_polys(self, varspace: VarSpace) -> List[Poly]:
        polys = []
        for item in self.items:
            if isinstance(item, Fraction):
                if item.denominator != 1:
                    raise VarSpaceMismatch(f'constant {item} is not an integer; use schur_value')
                polys.append(Poly.constant(varspace, item.numerator))
                continue
            kind, index, sign = item
            variable = Poly.u(varspace, index) if kind == 'u' else Poly.t(varspace, index)
            polys.append(variable * sign)
        return polys


@lru_cache(maxsize=None)
def schur_poly(shape: Partition, args: EvalArgs, varspace: VarSpace) -> Poly:
    """타블로 합으로 계산한 Schur 다항식 s_shape(args)"""
    polys = args.to_polys(varspace)
    total = Poly.zero(varspace)
    for tableau in _sst(shape, len(polys)):
        term = Poly.one(varspace)
        for _, _, value in tableau.entries():
            term = term * polys[value - 1]
        total = total + term
    return total


def complete_homogeneous(degree: int, polys: Sequence[Poly], varspace: VarSpace) -> Poly:
    """h_degree(polys)"""
    if degree < 0:
        return Poly.zero(varspace)
    # h_m(x_1..x_k) = sum_i x_k^i h_{m-i}(x_1..x_{k-1})
    row = [Poly.one(varspace)] + [Poly.zero(varspace)] * degree
    for variable in polys:
        for m in range(1, degree + 1):
            row[m] = row[m] + variable * row[m - 1]
    return row[degree]


def schur_poly_jacobi_trudi(shape: Partition, args: EvalArgs, varspace: VarSpace) -> Poly:
    """Jacobi-Trudi 행렬식 det(h_{λ_i - i + j})"""
    polys = args.to_polys(varspace)
    length = shape.length
    if length == 0:
        return Poly.one(varspace)
    h = {}
    total = Poly.zero(varspace)
    for sigma in permutations(range(length)):
        term = Poly.one(varspace) * Permutation(list(sigma)).signature()
        for i in range(length):
            degree = shape.parts[i] - i + sigma[i]
            if degree not in h:
                h[degree] = complete_homogeneous(degree, polys, varspace)
            term = term * h[degree]
            if term.is_zero():
                break
        total = total + term
    return total


def schur_in_u(shape: Partition, varspace: VarSpace) -> Poly:
    return schur_poly(shape, EvalArgs.u_vars(varspace.r), varspace)


def schur_value(shape: Partition, values: Sequence) -> Fraction:
    """유리수 인자에서 Schur 다항식의 정확한 값"""
    values = [Fraction(v) for v in values]
    return sum(
        (prod((values[v - 1] for _, _, v in tableau.entries()), start=Fraction(1))
         for tableau in _sst(shape, len(values))),
        Fraction(0),
    )


def _horizontal_strips(lam: Partition, k: int) -> List[Partition]:
    padded = list(lam.parts) + [0]
    results: List[Partition] = []

    def extend(i: int, remaining: int, built: List[int]):
        if i == len(padded):
            if remaining == 0:
                results.append(Partition.of(built))
            return
        upper = remaining if i == 0 else min(remaining, padded[i - 1] - padded[i])
        for add in range(upper, -1, -1):
            extend(i + 1, remaining - add, built + [padded[i] + add])

    extend(0, k, [])
    return results


def _pieri(expansion: Counter, k: int) -> Counter:
    """(sum c_λ s_λ) * h_k"""
    result: Counter = Counter()
    for lam, coeff in expansion.items():
        for nu in _horizontal_strips(lam, k):
            result[nu] += coeff
    return result


@lru_cache(maxsize=None)
def _schur_product(lam: Partition, mu: Partition) -> Tuple[Tuple[Partition, int], ...]:
    if mu.length == 0:
        return ((lam, 1),)
    total: Counter = Counter()
    length = mu.length
    for sigma in permutations(range(length)):
        degrees = [mu.parts[i] - i + sigma[i] for i in range(length)]
        if any(d < 0 for d in degrees):
            continue
        current = Counter({lam: 1})
        for degree in degrees:
            if degree:
                current = _pieri(current, degree)
        sign = Permutation(list(sigma)).signature()
        for nu, coeff in current.items():
            total[nu] += sign * coeff
    return tuple(sorted((nu, c) for nu, c in total.items() if c))


def schur_product(lam: Partition, mu: Partition) -> Dict[Partition, int]:
    """s_λ * s_μ = sum_ν c^ν_{λμ} s_ν (반복 Pieri 전개)"""
    return dict(_schur_product(lam, mu))


def lr_coeff(lam: Partition, mu: Partition, nu: Partition) -> int:
    if lam.size + mu.size != nu.size:
        return 0
    if not (nu.contains(lam) and nu.contains(mu)):
        return 0
    return schur_product(lam, mu).get(nu, 0)


@dataclass(frozen=True)
class SchurExpansion:
    """sum_λ q_λ(t) s_λ(u)"""

    varspace: VarSpace
    coefficients: Dict[Partition, Poly] = field(default_factory=dict)

    def __post_init__(self):
        for lam, coeff in self.coefficients.items():
            if lam.length > self.varspace.r:
                raise ShapeOutOfBox(f'{lam} has more than r={self.varspace.r} parts')
            if not coeff.is_t_only():
                raise VarSpaceMismatch(f'coefficient of {lam} involves u-variables')

    def items(self) -> List[Tuple[Partition, Poly]]:
        return sorted(
            ((lam, q) for lam, q in self.coefficients.items() if q),
            key=lambda item: item[0].sort_key(),
        )

    def is_empty(self) -> bool:
        return not self.items()

    def evaluate(self) -> Poly:
        total = Poly.zero(self.varspace)
        for lam, coeff in self.items():
            total = total + coeff * schur_in_u(lam, self.varspace)
        return total

    def __eq__(self, other):
        if not isinstance(other, SchurExpansion):
            return NotImplemented
        return self.varspace == other.varspace and self.items() == other.items()

    def to_json(self) -> List[dict]:
        return [{'partition': lam.to_json(), 'coeff': q.to_json()} for lam, q in self.items()]

    def render(self) -> str:
        if self.is_empty():
            return '0'
        return ' + '.join(f'({q})*s{lam}(u)' for lam, q in self.items())


def _swap_u(p: Poly, k: int) -> Poly:
    varspace = p.varspace
    return p.substitute({f'u{k}': Poly.u(varspace, k + 1), f'u{k + 1}': Poly.u(varspace, k)})


def is_u_symmetric(p: Poly) -> bool:
    return all(_swap_u(p, k) == p for k in range(1, p.varspace.r))


def schur_expand(p: Poly) -> SchurExpansion:
    """u-대칭 다항식을 Schur 기저로 전개합니다.

    Args:
        p: t-계수를 갖는 u-대칭 다항식

    Returns:
        SchurExpansion: p = sum q_λ(t) s_λ(u)

    Raises:
        NotSymmetric: p가 u-변수 치환에 불변이 아닌 경우
    """
    if not is_u_symmetric(p):
        raise NotSymmetric(f'polynomial is not symmetric in u: {p}')
    varspace = p.varspace
    coefficients: Dict[Partition, Poly] = {}
    remaining = p
    while remaining:
        by_u = remaining.split_u()
        lead = max(by_u, key=lambda exponent: (sum(exponent), exponent))
        if any(a < b for a, b in zip(lead, lead[1:])):
            raise NotSymmetric(f'leading u-exponent {lead} is not a partition')
        lam = Partition.of(lead)
        coeff = by_u[lead]
        coefficients[lam] = coeff
        remaining = remaining - coeff * schur_in_u(lam, varspace)
    return SchurExpansion(varspace, coefficients)


def rect_complement(lam: Partition, rows: int, cols: int) -> Partition:
    """rows x cols 직사각형 안에서 λ의 180도 회전 여분할"""
    if not lam.fits(rows, cols):
        raise DoesNotFit(f'{lam} does not fit in a {rows}x{cols} box', {'rows': rows, 'cols': cols})
    return Partition.of(cols - lam.part(rows + 1 - i) for i in range(1, rows + 1))


def omega_transpose(e: SchurExpansion) -> SchurExpansion:
    """u-측 Schur 함수만 전치 (t-계수는 그대로)"""
    r = e.varspace.r
    transposed: Dict[Partition, Poly] = {}
    for lam, coeff in e.items():
        if lam.width > r:
            raise TransposeOverflow(
                f'transpose of {lam} has {lam.width} parts, more than r={r}',
                {'partition': lam.to_json(), 'r': r},
            )
        transposed[lam.conjugate()] = coeff
    return SchurExpansion(e.varspace, transposed)


@lru_cache(maxsize=None)
def factorial_schur(lam: Partition, r: int, n: int, t_sign: int = 1, varspace: Optional[VarSpace] = None) -> Poly:
    """행렬 Schubert 다양체의 클래스 (factorial Schur 다항식)

    각 칸 (row, col)의 인수는 u_T - t_sign * t_{T + col - row} 입니다.
    (칸의 content 를 t 첨자 이동량으로 사용)
    """
    if lam.width > n - r or lam.length > r:
        raise ShapeOutOfBox(f'{lam} does not fit in the {r}x{n - r} box', {'r': r, 'n': n})
    varspace = varspace or VarSpace(r, n)
    total = Poly.zero(varspace)
    for tableau in _sst(lam, r):
        term = Poly.one(varspace)
        for row, col, value in tableau.entries():
            term = term * (Poly.u(varspace, value) - Poly.t(varspace, value + col - row) * t_sign)
        total = total + term
    return total


def schur_principal(lam: Partition, k: int) -> int:
    """s_λ(1^k), hook-content 공식"""
    if lam.length > k:
        return 0
    conj = lam.conjugate()
    value = Fraction(1)
    for row, col in lam.cells():
        hook = (lam.part(row) - col) + (conj.part(col) - row) + 1
        value *= Fraction(k + col - row, hook)
    return int(value)
