"""
정확 다항식 연산 테스트

다항식 산술, 선형형식 나눗셈, 선형형식 분모 분수의 소거, 최저차 성분,
Laurent 분수 비교를 검사합니다.

실행 방법:
    python test_exactpoly.py
    pytest test_exactpoly.py
"""

import sys
import random
import logging
from fractions import Fraction

import pytest

from app.orbit.errors import (
    DenominatorRemains,
    DenominatorZero,
    NotDivisible,
    VarSpaceMismatch,
    ZeroPolynomial,
)
from app.orbit.exactpoly import (
    LaurentFraction,
    LinFormFraction,
    Poly,
    VarSpace,
    divide_by_linear_form,
    eval_rational,
    frac_add,
    frac_mul,
    frac_to_poly,
    lowest_form,
    poly_arith,
)

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)

V = VarSpace(1, 3)


def t(j):
    return Poly.t(V, j)


def test_arithmetic_and_evaluation():
    """(u1 - t1) * t2 의 값과 정수 연산"""
    p = (Poly.u(V, 1) - t(1)) * t(2)
    assert p.evaluate([1, 2, 0], [5]) == Fraction(8)
    assert poly_arith(t(1), t(2), 'add') == t(2) + t(1)
    assert 1 - t(1) == -(t(1) - 1)
    assert p.total_degree() == 2
    assert Poly.zero(V).total_degree() == -1
    assert p.u_degree(1) == 1


def test_varspace_mismatch():
    other = VarSpace(2, 3)
    with pytest.raises(VarSpaceMismatch):
        Poly.t(V, 1) + Poly.t(other, 1)
    with pytest.raises(VarSpaceMismatch):
        VarSpace(3, 2)


def test_divide_by_linear_form():
    assert divide_by_linear_form(t(1) ** 2 - t(2) ** 2, (1, 2)) == t(1) + t(2)
    with pytest.raises(NotDivisible):
        divide_by_linear_form(t(1) + t(2), (1, 2))
    with pytest.raises(NotDivisible):
        divide_by_linear_form(t(1), (2, 2))


def test_exact_quotient_and_substitute():
    assert (t(1) ** 2 - t(2) ** 2).exact_quotient(t(1) + t(2)) == t(1) - t(2)
    with pytest.raises(NotDivisible):
        t(1).exact_quotient(t(2))
    assert (Poly.u(V, 1) + t(1)).substitute({'u1': -t(2)}) == t(1) - t(2)


def test_partial_fractions_cancel():
    """sum_i t_i^k / prod_{j != i} (t_i - t_j) 는 k=0,1 이면 0, k=2 이면 1"""
    for power, expected in ((0, 0), (1, 0), (2, 1)):
        total = LinFormFraction.zero(V)
        for i in (1, 2, 3):
            term = LinFormFraction.of_poly(t(i) ** power)
            for j in (1, 2, 3):
                if j != i:
                    term = frac_mul(term, LinFormFraction.over_difference(Poly.one(V), i, j))
            total = frac_add(total, term)
        assert frac_to_poly(total) == expected


def test_denominator_remains():
    value = LinFormFraction.over_difference(Poly.one(V), 1, 2) + LinFormFraction.over_difference(Poly.one(V), 2, 3)
    with pytest.raises(DenominatorRemains):
        frac_to_poly(value)
    assert value.evaluate([0, 1, 3]) == Fraction(-1) + Fraction(-1, 2)
    first = LinFormFraction.over_difference(Poly.one(V), 1, 2)
    assert eval_rational(value, [0, 1, 3]) == eval_rational(first, [0, 1, 3]) - Fraction(1, 2)
    assert eval_rational(t(1) * t(3), [2, 0, 5]) == 10


def test_over_difference_reduces():
    fraction = LinFormFraction.over_difference(t(1) ** 2 - t(2) ** 2, 1, 2)
    assert fraction.is_polynomial()
    assert frac_to_poly(fraction) == t(1) + t(2)
    with pytest.raises(DenominatorZero):
        LinFormFraction.over_difference(Poly.one(V), 1, 2).evaluate([4, 4, 0])


def test_lowest_form():
    degree, form = lowest_form(1 - (1 - t(1)) * (1 - t(2)))
    assert degree == 1
    assert form == t(1) + t(2)
    with pytest.raises(ZeroPolynomial):
        lowest_form(Poly.zero(V))


def test_laurent_fraction_equals():
    shifted = LaurentFraction(t(1), Poly.one(V), (-1, 0, 0))
    assert shifted.equals(LaurentFraction.of_poly(Poly.one(V)))
    assert shifted.evaluate([3, 1, 1]) == 1
    assert not LaurentFraction.of_poly(t(2)).equals(LaurentFraction.of_poly(t(3)))


def test_json_document():
    p = 3 * t(1) * t(3) - Poly.u(V, 1) ** 2
    document = p.to_json()
    assert {'c': '3', 'u': [0], 't': [1, 0, 1]} in document
    assert Poly.from_json(V, document) == p


def _random_poly(rng, varspace=V, degree=3, terms=4):
    """작은 정수 계수의 무작위 다항식"""
    total = Poly.zero(varspace)
    for _ in range(terms):
        exponent = [0] * varspace.size
        for _ in range(rng.randint(0, degree)):
            exponent[rng.randrange(varspace.size)] += 1
        total = total + Poly.from_terms(varspace, {tuple(exponent): rng.randint(-4, 4)})
    return total


def _random_fraction(rng):
    x, y = rng.sample([1, 2, 3], 2)
    return LinFormFraction.over_difference(_random_poly(rng), x, y)


def _same(a, b):
    return frac_add(a, -b).is_zero()


def test_random_quotients():
    rng = random.Random(20240611)
    for _ in range(10):
        p, q = _random_poly(rng), _random_poly(rng, degree=2)
        if q:
            assert (p * q).exact_quotient(q) == p
        a, b = rng.sample([1, 2, 3], 2)
        assert divide_by_linear_form(p * (t(a) - t(b)), (a, b)) == p


def test_fraction_field_laws():
    rng = random.Random(7)
    for _ in range(8):
        x, y, z = _random_fraction(rng), _random_fraction(rng), _random_fraction(rng)
        assert _same(frac_add(x, y), frac_add(y, x))
        assert _same(frac_add(frac_add(x, y), z), frac_add(x, frac_add(y, z)))
        assert _same(frac_mul(x, y), frac_mul(y, x))
        assert _same(frac_mul(frac_mul(x, y), z), frac_mul(x, frac_mul(y, z)))
        assert _same(frac_mul(x, frac_add(y, z)), frac_add(frac_mul(x, y), frac_mul(x, z)))


def test_eval_rational_is_a_homomorphism():
    rng = random.Random(11)
    for _ in range(8):
        x, y = _random_fraction(rng), _random_fraction(rng)
        t_values = rng.sample(range(-50, 50), 3)
        u_values = [rng.randint(-50, 50)]
        left_sum = eval_rational(frac_add(x, y), t_values, u_values)
        assert left_sum == eval_rational(x, t_values, u_values) + eval_rational(y, t_values, u_values)
        left_product = eval_rational(frac_mul(x, y), t_values, u_values)
        assert left_product == eval_rational(x, t_values, u_values) * eval_rational(y, t_values, u_values)


def test_lowest_form_laws():
    rng = random.Random(13)
    checked = 0
    while checked < 8:
        p, q = _random_poly(rng), _random_poly(rng)
        if not p or not q:
            continue
        dp, fp = lowest_form(p)
        dq, fq = lowest_form(q)
        assert lowest_form(p * q) == (dp + dq, fp * fq)
        # 최저 차수가 더 높은 항을 더해도 최저차 성분은 그대로
        assert lowest_form(p + q * t(1) ** (dp + 1)) == (dp, fp)
        checked += 1


def main():
    """모든 테스트 실행"""
    logger.info("\n" + "=" * 60)
    logger.info("exactpoly Tests")
    logger.info("=" * 60 + "\n")

    tests = {
        "Arithmetic": test_arithmetic_and_evaluation,
        "VarSpace mismatch": test_varspace_mismatch,
        "Linear form division": test_divide_by_linear_form,
        "Exact quotient / substitute": test_exact_quotient_and_substitute,
        "Partial fractions": test_partial_fractions_cancel,
        "Denominator remains": test_denominator_remains,
        "Over difference": test_over_difference_reduces,
        "Lowest form": test_lowest_form,
        "Laurent fraction": test_laurent_fraction_equals,
        "JSON document": test_json_document,
        "Random quotients": test_random_quotients,
        "Fraction field laws": test_fraction_field_laws,
        "eval_rational homomorphism": test_eval_rational_is_a_homomorphism,
        "Lowest form laws": test_lowest_form_laws,
    }
    results = {}
    for test_name, test in tests.items():
        try:
            test()
            results[test_name] = True
        except Exception as e:
            logger.error(f"❌ {test_name} failed: {e}")
            results[test_name] = False

    # 결과 요약
    logger.info("=" * 60)
    logger.info("Test Summary")
    logger.info("=" * 60)
    passed = sum(1 for v in results.values() if v)
    for test_name, passed_flag in results.items():
        status = "✅ PASSED" if passed_flag else "❌ FAILED"
        logger.info(f"{test_name}: {status}")
    logger.info(f"Total: {passed}/{len(results)} tests passed")

    return passed == len(results)


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
