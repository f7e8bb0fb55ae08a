"""
닫힌 형태 클래스 테스트

균등 매트로이드 행렬 궤도 폐포의 두 공식(LR / omega), 고정점 국소화 닫힌 형태,
Cauchy 항등식, 차수, Klyachko 계수를 검사합니다.

실행 방법:
    python test_classes.py
    pytest test_classes.py
"""

import sys
import logging

import pytest

from app.orbit.classes import (
    COMPLEMENT_LITERAL,
    cauchy_check,
    cauchy_sides,
    gl_class,
    klyachko_coefficient,
    q_localization_check,
    q_localization_sides,
    uniform_degree,
    uniform_matrix_class_lr,
    uniform_matrix_class_omega,
    uniform_orbit_localized,
    uniform_orbit_localized_value,
)
from app.orbit.errors import ShapeConstraint, TransposeOverflow
from app.orbit.exactpoly import Poly, VarSpace
from app.orbit.localize import orbit_chow_localization
from app.orbit.matroid import Matroid
from app.orbit.symfunc import EMPTY, EvalArgs, Partition, partitions_in_box, schur_poly

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def test_lr_class_2_4():
    V = VarSpace(2, 4)
    c = uniform_matrix_class_lr(2, 4)
    expected = {
        EMPTY: sum((Poly.t(V, j) for j in range(1, 5)), Poly.zero(V)),
        Partition.of([1]): Poly.constant(V, 2),
    }
    assert dict(c.schur().items()) == expected
    assert c.is_symmetric()
    assert c.within_width_bound()
    assert gl_class(2, 4) == 2 * (Poly.u(V, 1) + Poly.u(V, 2))


def test_lr_equals_omega():
    for r, n in ((1, 3), (2, 4), (2, 5), (3, 5)):
        assert uniform_matrix_class_lr(r, n).value == uniform_matrix_class_omega(r, n).value


def test_width_bound_exceeded_at_3_6():
    c = uniform_matrix_class_lr(3, 6)
    assert c.max_u_degree() == 4
    assert not c.within_width_bound()


def test_closed_form_matches_localization():
    for r, n in ((2, 4), (2, 5), (3, 5)):
        m = Matroid.uniform(r, n)
        for basis in m.sorted_bases():
            assert uniform_orbit_localized(r, n, basis) == orbit_chow_localization(m, basis)
    point = [3, -1, 2, 7, 5]
    closed = uniform_orbit_localized(2, 5, (2, 4))
    assert uniform_orbit_localized_value(2, 5, (2, 4), point) == closed.evaluate(point)


def test_literal_complement_differs():
    m = Matroid.uniform(2, 5)
    assert uniform_orbit_localized(2, 4, (1, 2), COMPLEMENT_LITERAL) == orbit_chow_localization(
        Matroid.uniform(2, 4), (1, 2)
    )
    assert uniform_orbit_localized(2, 5, (1, 2), COMPLEMENT_LITERAL) != orbit_chow_localization(m, (1, 2))


def test_degrees():
    assert uniform_degree(2, 4) == 4
    assert uniform_degree(2, 5) == 10
    assert uniform_degree(1, 7) == 1


def test_klyachko_variants():
    lam = Partition.of([2, 1])
    assert klyachko_coefficient(lam, 2, 4, 1) == 0
    assert klyachko_coefficient(lam, 2, 4, 0) == 2
    with pytest.raises(ShapeConstraint):
        klyachko_coefficient(Partition.of([2, 2]), 2, 4, 1)


def test_cauchy_identity():
    for size_t in (1, 2, 3):
        for size_v in (1, 2, 3):
            assert cauchy_check(size_t, size_v)
    with pytest.raises(ShapeConstraint):
        cauchy_check(5, 1)
    left, right = cauchy_sides(2, 1)
    V = VarSpace(2, 2)
    u1 = Poly.u(V, 1)
    assert left == (Poly.t(V, 1) - u1) * (Poly.t(V, 2) - u1)
    assert right == left


def test_q_localization():
    for nu in partitions_in_box(2, 2):
        assert q_localization_check(nu, 2, 4), nu
    V = VarSpace(2, 4)
    left, right = q_localization_sides(Partition.of([2]), 2, 4)
    coefficients = dict(left.items())
    # s_2(u, t) 의 s_2(u) 항은 전치 후 s_11(u) 가 됨
    assert coefficients[Partition.of([1, 1])] == Poly.one(V)
    assert Partition.of([2]) not in coefficients
    assert coefficients[EMPTY] == schur_poly(Partition.of([2]), EvalArgs.t_vars(range(1, 5)), V)
    with pytest.raises(TransposeOverflow):
        q_localization_check(Partition.of([3]), 2, 4)


def test_shape_constraints():
    with pytest.raises(ShapeConstraint):
        uniform_matrix_class_lr(3, 3)
    with pytest.raises(ShapeConstraint):
        uniform_degree(0, 4)


def main():
    """모든 테스트 실행"""
    logger.info("\n" + "=" * 60)
    logger.info("classes Tests")
    logger.info("=" * 60 + "\n")

    tests = {
        "LR class (2,4)": test_lr_class_2_4,
        "LR = omega": test_lr_equals_omega,
        "Width bound (3,6)": test_width_bound_exceeded_at_3_6,
        "Closed form = localization": test_closed_form_matches_localization,
        "Literal complement": test_literal_complement_differs,
        "Degrees": test_degrees,
        "Klyachko": test_klyachko_variants,
        "Cauchy": test_cauchy_identity,
        "Q-localization": test_q_localization,
        "Shape constraints": test_shape_constraints,
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
