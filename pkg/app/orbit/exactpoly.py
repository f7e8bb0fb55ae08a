"""
정확 다항식 / 선형식 분모 유리함수 연산 모듈

Z[u_1..u_r, t_1..t_n] 위의 희소 다항식(sympy 희소 다항식 환)과,
분모가 (t_a - t_b) 꼴 선형식의 곱으로만 이루어진 유리함수를 다룹니다.
부동소수점은 사용하지 않습니다.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import ring

from app.orbit.errors import (
    DenominatorRemains,
    DenominatorZero,
    NotDivisible,
    VarSpaceMismatch,
    ZeroPolynomial,
)

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]
Form = Tuple[int, int]


@lru_cache(maxsize=None)
def _poly_ring(r: int, n: int):
    # u-블록이 t-블록보다 앞에 오는 graded-lex 순서
    names = [f'u{k}' for k in range(1, r + 1)] + [f't{j}' for j in range(1, n + 1)]
    return ring(','.join(names), ZZ, grlex)[0]


@dataclass(frozen=True)
class VarSpace:
    """u_1..u_r, t_1..t_n 변수 공간"""

    r: int
    n: int

    def __post_init__(self):
        if not 1 <= self.r <= self.n:
            raise VarSpaceMismatch(
                f'invalid variable space r={self.r}, n={self.n} (need 1 <= r <= n)',
                {'r': self.r, 'n': self.n},
            )

    @property
    def ring(self):
        return _poly_ring(self.r, self.n)

    @property
    def size(self) -> int:
        return self.r + self.n

    def u_gen(self, k: int):
        if not 1 <= k <= self.r:
            raise VarSpaceMismatch(f'u_{k} is not a variable of {self}')
        return self.ring.gens[k - 1]

    def t_gen(self, j: int):
        if not 1 <= j <= self.n:
            raise VarSpaceMismatch(f't_{j} is not a variable of {self}')
        return self.ring.gens[self.r + j - 1]


class Poly:
    """정수 계수 희소 다항식 (불변 값 객체)"""

    __slots__ = ('varspace', 'element')

    def __init__(self, varspace: VarSpace, element=None):
        self.varspace = varspace
        self.element = varspace.ring.zero if element is None else element

    # ------------------------------------------------------------------
    # 생성자
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, varspace: VarSpace) -> 'Poly':
        return cls(varspace, varspace.ring.zero)

    @classmethod
    def one(cls, varspace: VarSpace) -> 'Poly':
        return cls(varspace, varspace.ring.one)

    @classmethod
    def constant(cls, varspace: VarSpace, value: int) -> 'Poly':
        return cls(varspace, varspace.ring(int(value)))

    @classmethod
    def u(cls, varspace: VarSpace, k: int) -> 'Poly':
        return cls(varspace, varspace.u_gen(k))

    @classmethod
    def t(cls, varspace: VarSpace, j: int) -> 'Poly':
        return cls(varspace, varspace.t_gen(j))

    @classmethod
    def from_terms(cls, varspace: VarSpace, terms: Mapping[Exponent, int]) -> 'Poly':
        cleaned = {}
        for exponent, coeff in terms.items():
            if len(exponent) != varspace.size:
                raise VarSpaceMismatch(
                    f'exponent {exponent} does not match {varspace.size} variables'
                )
            if coeff:
                cleaned[tuple(exponent)] = ZZ(int(coeff))
        return cls(varspace, varspace.ring.from_dict(cleaned))

    @classmethod
    def monomial_t(cls, varspace: VarSpace, exponents: Sequence[int]) -> 'Poly':
        return cls.from_terms(varspace, {(0,) * varspace.r + tuple(exponents): 1})

    # ------------------------------------------------------------------
    # 조회
    # ------------------------------------------------------------------
    def terms(self) -> List[Tuple[Exponent, int]]:
        """정준 순서(graded-lex 내림차순)의 (지수, 계수) 목록"""
        return [(monom, int(coeff)) for monom, coeff in self.element.terms()]

    def is_zero(self) -> bool:
        return not self.element

    def __bool__(self) -> bool:
        return bool(self.element)

    def total_degree(self) -> int:
        """전체 차수 (영다항식은 -1)"""
        return max((sum(monom) for monom in self.element.itermonoms()), default=-1)

    def u_degree(self, k: int) -> int:
        index = k - 1
        return max((monom[index] for monom in self.element.itermonoms()), default=-1)

    def u_total_degree(self) -> int:
        r = self.varspace.r
        return max((sum(monom[:r]) for monom in self.element.itermonoms()), default=-1)

    def is_t_only(self) -> bool:
        r = self.varspace.r
        return all(not any(monom[:r]) for monom in self.element.itermonoms())

    def constant_term(self) -> int:
        return int(dict(self.element.items()).get((0,) * self.varspace.size, 0))

    def homogeneous_part(self, degree: int) -> 'Poly':
        return Poly(self.varspace, self.varspace.ring.from_dict(
            {m: c for m, c in self.element.items() if sum(m) == degree}
        ))

    def is_homogeneous(self) -> bool:
        return len({sum(monom) for monom in self.element.itermonoms()}) <= 1

    def u_homogeneous_part(self, degree: int) -> 'Poly':
        r = self.varspace.r
        return Poly(self.varspace, self.varspace.ring.from_dict(
            {m: c for m, c in self.element.items() if sum(m[:r]) == degree}
        ))

    def split_u(self) -> Dict[Exponent, 'Poly']:
        """u-지수별 t-계수 다항식으로 분해"""
        r = self.varspace.r
        grouped: Dict[Exponent, dict] = {}
        for monom, coeff in self.element.items():
            t_monom = (0,) * r + tuple(monom[r:])
            grouped.setdefault(tuple(monom[:r]), {})[t_monom] = coeff
        ring_ = self.varspace.ring
        return {u_exp: Poly(self.varspace, ring_.from_dict(terms)) for u_exp, terms in grouped.items()}

    # ------------------------------------------------------------------
    # 산술
    # ------------------------------------------------------------------
    def _coerce(self, other) -> 'Poly':
        if isinstance(other, Poly):
            if other.varspace != self.varspace:
                raise VarSpaceMismatch(
                    f'cannot combine polynomials over {self.varspace} and {other.varspace}'
                )
            return other
        if isinstance(other, int):
            return Poly.constant(self.varspace, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.varspace, self.element + other.element)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.varspace, self.element - other.element)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.varspace, other.element - self.element)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.varspace, self.element * other.element)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(self.varspace, -self.element)

    def __pow__(self, exponent: int):
        return Poly(self.varspace, self.element ** exponent)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.varspace, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.varspace == other.varspace and self.element == other.element

    def __hash__(self):
        return hash((self.varspace, frozenset(self.element.items())))

    def exact_quotient(self, divisor: 'Poly') -> 'Poly':
        divisor = self._coerce(divisor)
        if not divisor:
            raise NotDivisible('division by the zero polynomial')
        try:
            return Poly(self.varspace, self.element.exquo(divisor.element))
        except ExactQuotientFailed as error:
            raise NotDivisible(f'{self} is not divisible by {divisor}') from error

    def substitute(self, mapping: Mapping[str, 'Poly']) -> 'Poly':
        """변수를 다항식으로 동시 치환합니다.

        Args:
            mapping: 'u1', 't3' 같은 변수 이름 -> 치환할 다항식

        Returns:
            Poly: 치환 결과
        """
        if not mapping:
            return self
        ring_ = self.varspace.ring
        names = [str(symbol) for symbol in ring_.symbols]
        replacements = []
        for name, value in mapping.items():
            value = self._coerce(value)
            replacements.append((ring_.gens[names.index(name)], value.element))
        return Poly(self.varspace, self.element.compose(replacements))

    # ------------------------------------------------------------------
    # 평가 / 직렬화
    # ------------------------------------------------------------------
    def evaluate(self, t_values: Sequence, u_values: Sequence = ()) -> Fraction:
        point = _point(self.varspace, t_values, u_values)
        total = Fraction(0)
        for monom, coeff in self.element.items():
            factors = []
            for index, power in enumerate(monom):
                if power:
                    if point[index] is None:
                        raise VarSpaceMismatch(f'no value supplied for {self.varspace.ring.symbols[index]}')
                    factors.append(point[index] ** power)
            total += int(coeff) * prod(factors, start=Fraction(1))
        return total

    def to_json(self) -> List[dict]:
        r = self.varspace.r
        return [
            {'c': str(coeff), 'u': list(monom[:r]), 't': list(monom[r:])}
            for monom, coeff in self.terms()
        ]

    @classmethod
    def from_json(cls, varspace: VarSpace, data: Iterable[dict]) -> 'Poly':
        terms: Dict[Exponent, int] = {}
        for term in data:
            u_exp = list(term.get('u', [0] * varspace.r))
            t_exp = list(term['t'])
            if len(u_exp) != varspace.r or len(t_exp) != varspace.n:
                raise VarSpaceMismatch(f'term {term} does not match {varspace}')
            exponent = tuple(u_exp + t_exp)
            terms[exponent] = terms.get(exponent, 0) + int(term['c'])
        return cls.from_terms(varspace, terms)

    def __str__(self):
        return str(self.element.as_expr()) if self.element else '0'

    def __repr__(self):
        return f'Poly({self})'


def _point(varspace: VarSpace, t_values: Sequence, u_values: Sequence) -> List[Optional[Fraction]]:
    if len(t_values) not in (0, varspace.n) or len(u_values) not in (0, varspace.r):
        raise VarSpaceMismatch(
            f'point with {len(u_values)} u- and {len(t_values)} t-values does not match {varspace}'
        )
    u_part = [Fraction(v) for v in u_values] or [None] * varspace.r
    t_part = [Fraction(v) for v in t_values] or [None] * varspace.n
    return u_part + t_part


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    raise ValueError(f'unknown polynomial operation: {op}')


def divide_by_linear_form(p: Poly, form: Form) -> Poly:
    """p / (t_a - t_b)

    p에 t_a := t_b 를 대입한 결과가 0일 때만 나누어 떨어집니다.
    """
    a, b = form
    varspace = p.varspace
    if a == b:
        raise NotDivisible(f'linear form t{a} - t{b} is identically zero', {'form': [a, b]})
    if p.is_zero():
        return p
    if p.element.compose(varspace.t_gen(a), varspace.t_gen(b)):
        raise NotDivisible(f'{p} is not divisible by t{a} - t{b}', {'form': [a, b]})
    return Poly(varspace, p.element.exquo(_form_element(varspace, a, b)))


@lru_cache(maxsize=None)
def _form_element(varspace: VarSpace, a: int, b: int):
    return varspace.t_gen(a) - varspace.t_gen(b)


def _canonical_difference(x: int, y: int) -> Tuple[int, Form]:
    """t_x - t_y = sign * (t_a - t_b), a < b"""
    if x == y:
        raise DenominatorZero(f'linear form t{x} - t{y} is identically zero')
    return (1, (x, y)) if x < y else (-1, (y, x))


@dataclass(frozen=True)
class LinFormFraction:
    """numerator / prod (t_a - t_b)^m, a < b"""

    numerator: Poly
    denominator: Tuple[Tuple[Form, int], ...] = ()

    @classmethod
    def of_poly(cls, p: Poly) -> 'LinFormFraction':
        return cls(p, ())

    @classmethod
    def zero(cls, varspace: VarSpace) -> 'LinFormFraction':
        return cls(Poly.zero(varspace), ())

    @classmethod
    def one(cls, varspace: VarSpace) -> 'LinFormFraction':
        return cls(Poly.one(varspace), ())

    @classmethod
    def over_difference(cls, numerator: Poly, x: int, y: int) -> 'LinFormFraction':
        """numerator / (t_x - t_y)"""
        sign, form = _canonical_difference(x, y)
        return _reduced(numerator * sign, Counter({form: 1}))

    @property
    def varspace(self) -> VarSpace:
        return self.numerator.varspace

    @property
    def forms(self) -> Counter:
        return Counter(dict(self.denominator))

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return not self.denominator

    def __add__(self, other: 'LinFormFraction') -> 'LinFormFraction':
        return frac_add(self, other)

    def __mul__(self, other: 'LinFormFraction') -> 'LinFormFraction':
        return frac_mul(self, other)

    def __neg__(self) -> 'LinFormFraction':
        return LinFormFraction(-self.numerator, self.denominator)

    def evaluate(self, t_values: Sequence, u_values: Sequence = ()) -> Fraction:
        denominator = Fraction(1)
        for (a, b), mult in self.denominator:
            value = Fraction(t_values[a - 1]) - Fraction(t_values[b - 1])
            if value == 0:
                raise DenominatorZero(f't{a} - t{b} vanishes at the evaluation point', {'form': [a, b]})
            denominator *= value ** mult
        return self.numerator.evaluate(t_values, u_values) / denominator

    def __str__(self):
        if not self.denominator:
            return str(self.numerator)
        forms = '*'.join(
            f'(t{a} - t{b})' + (f'^{m}' if m > 1 else '') for (a, b), m in self.denominator
        )
        return f'({self.numerator}) / {forms}'


def _reduced(numerator: Poly, forms: Counter) -> LinFormFraction:
    """공통 선형식 인수를 분자에서 소거한 정규형"""
    if numerator.is_zero():
        return LinFormFraction(numerator, ())
    varspace = numerator.varspace
    element = numerator.element
    remaining = []
    for (a, b), mult in sorted(forms.items()):
        form = _form_element(varspace, a, b)
        t_a, t_b = varspace.t_gen(a), varspace.t_gen(b)
        while mult > 0 and not element.compose(t_a, t_b):
            element = element.exquo(form)
            mult -= 1
        if mult > 0:
            remaining.append(((a, b), mult))
    return LinFormFraction(Poly(varspace, element), tuple(remaining))


def frac_add(a: LinFormFraction, b: LinFormFraction) -> LinFormFraction:
    if a.varspace != b.varspace:
        raise VarSpaceMismatch(f'cannot add fractions over {a.varspace} and {b.varspace}')
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    a_forms, b_forms = a.forms, b.forms
    common = a_forms | b_forms
    varspace = a.varspace

    def scaled(fraction: LinFormFraction, own: Counter):
        element = fraction.numerator.element
        for (x, y), mult in common.items():
            missing = mult - own.get((x, y), 0)
            if missing:
                element = element * _form_element(varspace, x, y) ** missing
        return element

    numerator = Poly(varspace, scaled(a, a_forms) + scaled(b, b_forms))
    return _reduced(numerator, common)


def frac_mul(a: LinFormFraction, b: LinFormFraction) -> LinFormFraction:
    if a.varspace != b.varspace:
        raise VarSpaceMismatch(f'cannot multiply fractions over {a.varspace} and {b.varspace}')
    if a.is_zero() or b.is_zero():
        return LinFormFraction.zero(a.varspace)
    return _reduced(a.numerator * b.numerator, a.forms + b.forms)


def frac_to_poly(a: LinFormFraction) -> Poly:
    if a.denominator:
        raise DenominatorRemains(
            f'value is not a polynomial: {a}',
            {'denominator': [[x, y, m] for (x, y), m in a.denominator]},
        )
    return a.numerator


def lowest_form(p: Poly) -> Tuple[int, Poly]:
    """최저 전체 차수와 그 차수의 동차 성분"""
    if p.is_zero():
        raise ZeroPolynomial('lowest form of the zero polynomial is undefined')
    degree = min(sum(monom) for monom in p.element.itermonoms())
    return degree, p.homogeneous_part(degree)


def eval_rational(value: Union[Poly, LinFormFraction], t_values: Sequence, u_values: Sequence = ()) -> Fraction:
    return value.evaluate(t_values, u_values)


@dataclass(frozen=True)
class LaurentFraction:
    """t^offsets * numerator / denominator (K-이론 국소화 값)"""

    numerator: Poly
    denominator: Poly
    offsets: Tuple[int, ...]

    def __post_init__(self):
        if self.denominator.is_zero():
            raise DenominatorZero('Laurent fraction with zero denominator')
        if len(self.offsets) != self.numerator.varspace.n:
            raise VarSpaceMismatch('one exponent offset per t-variable is required')

    @classmethod
    def of_poly(cls, p: Poly) -> 'LaurentFraction':
        return cls(p, Poly.one(p.varspace), (0,) * p.varspace.n)

    @property
    def varspace(self) -> VarSpace:
        return self.numerator.varspace

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def equals(self, other: 'LaurentFraction') -> bool:
        varspace = self.varspace
        shift = [min(x, y) for x, y in zip(self.offsets, other.offsets)]
        left = Poly.monomial_t(varspace, [x - s for x, s in zip(self.offsets, shift)])
        right = Poly.monomial_t(varspace, [y - s for y, s in zip(other.offsets, shift)])
        return self.numerator * other.denominator * left == other.numerator * self.denominator * right

    def evaluate(self, t_values: Sequence) -> Fraction:
        scale = Fraction(1)
        for value, offset in zip(t_values, self.offsets):
            if offset < 0 and Fraction(value) == 0:
                raise DenominatorZero('monomial prefactor vanishes at the evaluation point')
            scale *= Fraction(value) ** offset
        denominator = self.denominator.evaluate(t_values)
        if denominator == 0:
            raise DenominatorZero('denominator vanishes at the evaluation point')
        return scale * self.numerator.evaluate(t_values) / denominator

    def __str__(self):
        monomial = '*'.join(f't{j}^{e}' for j, e in enumerate(self.offsets, start=1) if e)
        text = f'({self.numerator}) / ({self.denominator})'
        return f'{monomial} * {text}' if monomial else text
