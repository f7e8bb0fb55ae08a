"""
매트로이드 모듈

유리수 행렬에서 매트로이드(기저 집합)를 추출하고, 순열의 lex-first 기저,
균등성 판정, 기저 다면체의 교환 간선을 제공합니다.
기저는 원소 j -> 비트 (j-1) 인 비트셋으로 저장합니다.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from sympy import Matrix, Rational

from app.orbit.errors import InvalidBasis, InvalidMatroid, ParseError, RankDeficient

logger = logging.getLogger(__name__)

MAX_GROUND_SET = 16


def mask_of(subset: Iterable[int]) -> int:
    mask = 0
    for element in subset:
        mask |= 1 << (element - 1)
    return mask


def subset_of(mask: int) -> Tuple[int, ...]:
    return tuple(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def popcount(mask: int) -> int:
    return bin(mask).count('1')


@dataclass(frozen=True)
class RationalMatrix:
    """r x n 유리수 행렬"""

    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ParseError('matrix must have at least one row and one column')
        if any(len(row) != len(self.entries[0]) for row in self.entries):
            raise ParseError('matrix rows have different lengths')
        if self.rows > self.cols:
            raise ParseError(f'matrix has more rows ({self.rows}) than columns ({self.cols})')

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> 'RationalMatrix':
        return cls(tuple(tuple(Fraction(value) for value in row) for row in rows))

    @classmethod
    def from_json(cls, data: dict) -> 'RationalMatrix':
        """{"rows": r, "cols": n, "entries": [["p/q", ...], ...]}"""
        try:
            matrix = cls.of([[Fraction(str(value)) for value in row] for row in data['entries']])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
            raise ParseError(f'malformed matrix document: {error}') from error
        if 'rows' in data and int(data['rows']) != matrix.rows:
            raise ParseError(f'"rows" is {data["rows"]} but entries have {matrix.rows} rows')
        if 'cols' in data and int(data['cols']) != matrix.cols:
            raise ParseError(f'"cols" is {data["cols"]} but entries have {matrix.cols} columns')
        return matrix

    def to_json(self) -> dict:
        return {
            'rows': self.rows,
            'cols': self.cols,
            'entries': [[str(value) for value in row] for row in self.entries],
        }

    def to_sympy(self) -> Matrix:
        return Matrix([[Rational(v.numerator, v.denominator) for v in row] for row in self.entries])


@dataclass(frozen=True)
class Matroid:
    """기저 비트셋으로 표현한 매트로이드 (접지 집합 [n], 계수 r)"""

    n: int
    r: int
    bases: FrozenSet[int]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_GROUND_SET:
            raise InvalidMatroid(f'ground set size must be between 1 and {MAX_GROUND_SET}, got {self.n}')
        if not 1 <= self.r <= self.n:
            raise InvalidMatroid(f'rank must be between 1 and n={self.n}, got {self.r}')
        if not self.bases:
            raise InvalidMatroid('a matroid needs at least one basis')
        full = (1 << self.n) - 1
        for basis in self.bases:
            if basis & ~full or popcount(basis) != self.r:
                raise InvalidMatroid(f'{list(subset_of(basis))} is not an {self.r}-subset of [{self.n}]')
        if len(self.bases) < comb(self.n, self.r):
            violation = _exchange_violation(self.bases)
            if violation:
                raise InvalidMatroid(
                    'basis exchange axiom fails',
                    {'bases': [list(subset_of(b)) for b in violation]},
                )

    @classmethod
    def from_bases(cls, n: int, r: int, bases: Iterable[Iterable[int]]) -> 'Matroid':
        return cls(n, r, frozenset(mask_of(b) for b in bases))

    @classmethod
    def uniform(cls, r: int, n: int) -> 'Matroid':
        return cls(n, r, frozenset(mask_of(b) for b in combinations(range(1, n + 1), r)))

    @classmethod
    def from_json(cls, data: dict) -> 'Matroid':
        try:
            return cls.from_bases(int(data['n']), int(data['r']), data['bases'])
        except (KeyError, TypeError, ValueError) as error:
            raise ParseError(f'malformed matroid document: {error}') from error

    def to_json(self) -> dict:
        return {'n': self.n, 'r': self.r, 'bases': [list(b) for b in self.sorted_bases()]}

    def sorted_bases(self) -> List[Tuple[int, ...]]:
        return sorted(subset_of(b) for b in self.bases)

    def is_basis(self, subset: Iterable[int]) -> bool:
        return mask_of(subset) in self.bases

    def is_independent(self, mask: int) -> bool:
        return _independent(self.bases, mask)


@lru_cache(maxsize=1 << 16)
def _independent(bases: FrozenSet[int], mask: int) -> bool:
    return any(mask & basis == mask for basis in bases)


def _exchange_violation(bases: FrozenSet[int]):
    for first in bases:
        for second in bases:
            for i in subset_of(first & ~second):
                dropped = first & ~(1 << (i - 1))
                if not any(dropped | (1 << (j - 1)) in bases for j in subset_of(second & ~first)):
                    return first, second
    return None


def validate_subset(m: Matroid, subset: Sequence[int]) -> Tuple[int, ...]:
    """r-부분집합인지 확인하고 정렬된 튜플로 반환"""
    ordered = tuple(sorted(int(b) for b in subset))
    if len(set(ordered)) != m.r or len(ordered) != m.r or not all(1 <= b <= m.n for b in ordered):
        raise InvalidBasis(
            f'{list(subset)} is not an {m.r}-subset of [{m.n}]',
            {'basis': list(subset), 'r': m.r, 'n': m.n},
        )
    return ordered


def matroid_of_matrix(v: RationalMatrix) -> Matroid:
    """열 부분집합의 최대 소행렬식으로 기저를 결정합니다.

    Args:
        v: 행 계수가 꽉 찬 r x n 유리수 행렬

    Returns:
        Matroid: 소행렬식이 0이 아닌 r-부분집합 전체를 기저로 하는 매트로이드

    Raises:
        RankDeficient: rank(v) < r 인 경우
    """
    matrix = v.to_sympy()
    rank = matrix.rank()
    if rank < v.rows:
        raise RankDeficient(rank, v.rows)
    bases = []
    for columns in combinations(range(v.cols), v.rows):
        # Bareiss 소거는 분수 없이 정확
        if matrix.extract(list(range(v.rows)), list(columns)).det(method='bareiss') != 0:
            bases.append(tuple(c + 1 for c in columns))
    logger.debug('matrix %dx%d has %d bases', v.rows, v.cols, len(bases))
    return Matroid.from_bases(v.cols, v.rows, bases)


def is_uniform(m: Matroid) -> bool:
    return len(m.bases) == comb(m.n, m.r)


def lex_first_basis(m: Matroid, perm: Sequence[int]) -> Tuple[int, ...]:
    """순열을 차례로 훑으며 독립성을 유지하는 원소만 남기는 탐욕 기저"""
    if sorted(perm) != list(range(1, m.n + 1)):
        raise InvalidBasis(f'{list(perm)} is not a permutation of [{m.n}]')
    kept = 0
    for element in perm:
        candidate = kept | (1 << (element - 1))
        if m.is_independent(candidate):
            kept = candidate
    return subset_of(kept)


def exchange_edges(m: Matroid) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """원소 하나만 다른 기저 쌍 (기저 다면체의 간선)"""
    ordered = sorted(m.bases, key=subset_of)
    return [
        (subset_of(first), subset_of(second))
        for index, first in enumerate(ordered)
        for second in ordered[index + 1:]
        if popcount(first & second) == m.r - 1
    ]
