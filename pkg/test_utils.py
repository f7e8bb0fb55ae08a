"""
유틸리티 테스트

검증 파라미터 관리자(VerifyParameterManager), 검증 결과 저장소(VerifyReport),
무작위 평가 인증(certify) 을 검사합니다.

실행 방법:
    python test_utils.py
    pytest test_utils.py
"""

import os
import sys
import json
import logging
import tempfile

from app.orbit.exactpoly import Poly, VarSpace
from app.utils.certify import certify_poly_equal, failure_bound, random_points
from app.utils.verify_params import DEFAULT_VERIFY_PARAMS, SUITES, VerifyParameterManager
from app.utils.verify_report import VerifyReport

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def test_parameter_fallbacks():
    directory = tempfile.mkdtemp()
    missing = VerifyParameterManager(os.path.join(directory, 'missing.json'))
    assert missing.load() == DEFAULT_VERIFY_PARAMS

    corrupt_path = os.path.join(directory, 'corrupt.json')
    with open(corrupt_path, 'w', encoding='utf-8') as file:
        file.write('{not json')
    assert VerifyParameterManager(corrupt_path).load() == DEFAULT_VERIFY_PARAMS


def test_parameter_sanitize():
    path = os.path.join(tempfile.mkdtemp(), 'verify.json')
    with open(path, 'w', encoding='utf-8') as file:
        json.dump({
            "suites": {"gkm": {"max_n": 100}, "roundtrip": {"cases": [[2, 4], [5, 3], [3, 20]]}},
            "certify": {"trials": 0},
        }, file)
    loaded = VerifyParameterManager(path).load()
    assert loaded["suites"]["gkm"]["max_n"] == 16
    assert loaded["suites"]["gkm"]["corruptions"] == 3
    assert loaded["suites"]["roundtrip"]["cases"] == [[2, 4]]
    assert loaded["suites"]["kms"] == {"max_n": 5}
    assert loaded["certify"] == {"trials": 1, "seed": 20240611}
    assert set(loaded["suites"]) == set(SUITES)


def test_verify_report():
    report = VerifyReport('demo')
    report.record_case('first', True)
    report.record_case('second', False, {'basis': [1, 2]})
    report.record_case('third', False)
    report.record_note('literal variant differs', {'n': 5})
    assert not report.passed
    assert report.first_failure['name'] == 'second'
    overview = report.get_overview()
    assert overview['counts'] == {'passed': 1, 'failed': 2}
    assert overview['notes'][0]['details'] == {'n': 5}
    assert [case['id'] for case in report.get_cases(limit=2)] == [1, 2]


def test_verify_report_finish():
    report = VerifyReport('demo')
    report.record_case('only', True)
    assert report.get_overview()['finished_at'] is None
    report.finish()
    stamped = report.get_overview()['finished_at']
    assert stamped is not None
    report.finish()
    assert report.get_overview()['finished_at'] == stamped


def test_random_points():
    points = random_points(5, 2, 4, seed=11)
    assert points == random_points(5, 2, 4, seed=11)
    assert points != random_points(5, 2, 4, seed=12)
    for t_values, u_values in points:
        assert len(set(t_values)) == 5
        assert len(u_values) == 2


def test_certify_poly_equal():
    V = VarSpace(2, 3)
    t1, t2 = Poly.t(V, 1), Poly.t(V, 2)
    u1 = Poly.u(V, 1)
    same = certify_poly_equal((t1 + u1) ** 2, t1 ** 2 + 2 * t1 * u1 + u1 ** 2, trials=5, seed=3)
    assert same.passed
    assert same.to_dict()['failure_probability_bound'] == '(2/2000001)^5'
    different = certify_poly_equal(t1, t2, trials=5, seed=3)
    assert not different.passed
    assert different.to_dict()['first_failure']['trial'] == 0
    assert failure_bound(3, 20) == '(3/2000001)^20'


def main():
    """모든 테스트 실행"""
    logger.info("\n" + "=" * 60)
    logger.info("utils Tests")
    logger.info("=" * 60 + "\n")

    tests = {
        "Parameter fallbacks": test_parameter_fallbacks,
        "Parameter sanitize": test_parameter_sanitize,
        "Verify report": test_verify_report,
        "Verify report finish": test_verify_report_finish,
        "Random points": test_random_points,
        "Certify": test_certify_poly_equal,
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
