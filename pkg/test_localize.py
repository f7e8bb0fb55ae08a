"""
고정점 국소화 엔진 테스트

순열 합 Chow 국소화, 망원 형태, K-이론 국소화와 그 최저차 성분,
직합 분해, GKM 조건 검사를 검사합니다.

실행 방법:
    python test_localize.py
    pytest test_localize.py
"""

import sys
import logging

import pytest

from app.orbit.errors import CodimMismatch, InvalidBasis, NotHomogeneous, NotUniform
from app.orbit.exactpoly import Poly, VarSpace
from app.orbit.localize import (
    GKMTuple,
    full_k_localization,
    full_orbit_tuple,
    gkm_check,
    gkm_edges,
    kms_chow_from_k,
    lemma_sum_raw,
    orbit_chow_localization,
    orbit_chow_localization_telescoped,
    orbit_chow_localization_telescoped_value,
    orbit_chow_localization_value,
    orbit_codimension,
    orbit_dimension,
    orbit_k_localization,
)
from app.orbit.matroid import Matroid, RationalMatrix, matroid_of_matrix

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def parallel_pairs() -> Matroid:
    return matroid_of_matrix(RationalMatrix.of([[1, 1, 0, 0], [0, 0, 1, 1]]))


def test_uniform_2_4_value():
    V = VarSpace(2, 4)
    t1, t2, t3, t4 = (Poly.t(V, j) for j in range(1, 5))
    m = Matroid.uniform(2, 4)
    assert orbit_chow_localization(m, (1, 2)) == t3 + t4 - t1 - t2
    assert orbit_chow_localization(m, (2, 1)) == t3 + t4 - t1 - t2
    assert orbit_chow_localization(m, (3, 4)) == t1 + t2 - t3 - t4


def test_trivial_cases():
    f = full_orbit_tuple(Matroid.uniform(1, 2))
    assert [value for _, value in f.items()] == [1, 1]
    assert orbit_chow_localization(Matroid.uniform(2, 2), (1, 2)) == 1
    non_uniform = matroid_of_matrix(RationalMatrix.of([[1, 1, 0, 1], [0, 0, 1, 1]]))
    assert orbit_chow_localization(non_uniform, (1, 2)).is_zero()
    with pytest.raises(InvalidBasis):
        orbit_chow_localization(Matroid.uniform(2, 4), (1, 2, 3))


def test_direct_sum():
    V = VarSpace(2, 4)
    t1, t2, t3, t4 = (Poly.t(V, j) for j in range(1, 5))
    m = parallel_pairs()
    assert orbit_dimension(m) == 2
    assert orbit_codimension(m) == 2
    assert orbit_chow_localization(m, (1, 3)) == (t4 - t1) * (t2 - t3)
    assert orbit_chow_localization(m, (1, 2)).is_zero()
    # 블록으로 나누지 않은 순열 합은 직합에서 사라짐
    assert lemma_sum_raw(m, (1, 3)).is_zero()
    assert orbit_dimension(Matroid.uniform(2, 4)) == 3
    assert orbit_codimension(Matroid.uniform(2, 4)) == 1


def test_telescoped_form():
    m = Matroid.uniform(2, 5)
    for basis in m.sorted_bases():
        assert orbit_chow_localization_telescoped(m, basis) == orbit_chow_localization(m, basis)
    with pytest.raises(NotUniform):
        orbit_chow_localization_telescoped(parallel_pairs(), (1, 3))


def test_exact_value_matches_symbolic():
    point = [1, 2, 4, 8, 16]
    for m in (Matroid.uniform(2, 5), matroid_of_matrix(RationalMatrix.of([[1, 1, 0, 1, 1], [0, 0, 1, 1, 2]]))):
        for basis in ((1, 2), (1, 3), (2, 5), (4, 5)):
            expected = orbit_chow_localization(m, basis).evaluate(point)
            assert orbit_chow_localization_value(m, basis, point) == expected


def test_gkm_condition():
    m = Matroid.uniform(2, 4)
    f = full_orbit_tuple(m)
    assert gkm_check(f) == []
    assert gkm_check(full_orbit_tuple(parallel_pairs())) == []
    corrupted = f.with_value((1, 2), f[(1, 2)] + Poly.t(f.varspace, 1))
    violations = gkm_check(corrupted)
    assert violations
    assert all([1, 2] in (v['basis'], v['neighbor']) for v in violations)
    assert full_orbit_tuple(m, workers=2) == f


def test_tuple_document():
    f = full_orbit_tuple(Matroid.uniform(2, 4))
    assert GKMTuple.from_json(2, 4, f.to_json()) == f
    assert f.degrees() == [1]


def test_telescoped_value():
    point = [3, -1, 7, 2, 11]
    m = Matroid.uniform(2, 5)
    for basis in m.sorted_bases():
        assert orbit_chow_localization_telescoped_value(m, basis, point) == orbit_chow_localization_value(m, basis, point)
    with pytest.raises(NotUniform):
        orbit_chow_localization_telescoped_value(parallel_pairs(), (1, 3), [1, 2, 3, 4])


def test_gkm_edges():
    edges = gkm_edges(2, 4)
    # 6 개의 2-부분집합, 각각 4 개의 이웃
    assert len(edges) == 6 * 4 // 2
    assert ((1, 2), (1, 3), 2, 3) in edges
    assert all(neighbor > basis for basis, neighbor, _, _ in edges)


def test_tuple_homogeneity():
    V = VarSpace(2, 4)
    t1, t2 = Poly.t(V, 1), Poly.t(V, 2)
    with pytest.raises(NotHomogeneous):
        GKMTuple.constant(2, 4, t1).with_value((1, 2), t1 + 1)
    with pytest.raises(NotHomogeneous):
        GKMTuple.constant(2, 4, t1).with_value((3, 4), t1 * t2)
    # 0 은 어떤 차수와도 함께 쓸 수 있음
    assert GKMTuple.constant(2, 4, t1).with_value((1, 2), Poly.zero(V)).degrees() == [1]


def test_k_theory_lowest_form():
    for m in (Matroid.uniform(2, 4), matroid_of_matrix(RationalMatrix.of([[1, 1, 0, 1], [0, 0, 1, 1]]))):
        codim = orbit_codimension(m)
        for basis in m.sorted_bases():
            k = orbit_k_localization(m, basis)
            assert kms_chow_from_k(k, codim) == orbit_chow_localization(m, basis)
    k = orbit_k_localization(Matroid.uniform(2, 4), (1, 2))
    with pytest.raises(CodimMismatch):
        kms_chow_from_k(k, 2)
    assert orbit_k_localization(parallel_pairs(), (1, 2)).is_zero()
    assert len(full_k_localization(Matroid.uniform(2, 4)).values) == 6


def main():
    """모든 테스트 실행"""
    logger.info("\n" + "=" * 60)
    logger.info("localize Tests")
    logger.info("=" * 60 + "\n")

    tests = {
        "Uniform (2,4)": test_uniform_2_4_value,
        "Trivial cases": test_trivial_cases,
        "Direct sum": test_direct_sum,
        "Telescoped form": test_telescoped_form,
        "Exact value": test_exact_value_matches_symbolic,
        "GKM condition": test_gkm_condition,
        "Tuple document": test_tuple_document,
        "Telescoped value": test_telescoped_value,
        "GKM edges": test_gkm_edges,
        "Tuple homogeneity": test_tuple_homogeneity,
        "K-theory": test_k_theory_lowest_form,
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
