"""
orbitclass CLI 통합 테스트

main.main(argv) 를 직접 호출해 stdout JSON 문서와 종료 코드를 검사합니다.

실행 방법:
    python test_cli.py
    pytest test_cli.py
"""

import os
import sys
import io
import json
import logging
import tempfile
from contextlib import redirect_stdout

os.environ.setdefault('ORBITCLASS_ENV', 'testing')

from main import main as cli_main
from app.orbit.classes import uniform_matrix_class_lr
from app.orbit.errors import EXIT_DOMAIN_ERROR, EXIT_PARSE_ERROR, EXIT_RANK_ERROR, EXIT_SIZE_LIMIT
from app.orbit.exactpoly import Poly, VarSpace

# 로깅 설정
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)
logger = logging.getLogger(__name__)


def run_cli(*argv):
    """(종료 코드, stdout JSON 문서 또는 None)"""
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = cli_main(list(argv))
    text = buffer.getvalue().strip()
    return code, (json.loads(text) if text else None)


def write_json(document, raw: str = None) -> str:
    handle, path = tempfile.mkstemp(suffix='.json')
    with os.fdopen(handle, 'w', encoding='utf-8') as file:
        file.write(raw if raw is not None else json.dumps(document))
    return path


def test_matroid_of_identity():
    path = write_json({"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]})
    code, document = run_cli('matroid', path)
    assert code == 0
    assert document['n'] == 2 and document['r'] == 2
    assert document['bases'] == [[1, 2]]
    assert document['command'] == 'matroid'
    assert document['mode'] == 'exact'
    assert 'version' in document and 'seed' in document


def test_input_errors():
    code, document = run_cli('matroid', write_json(None, raw='{"entries": [[1, 0]'))
    assert code == EXIT_PARSE_ERROR and document is None
    code, _ = run_cli('matroid', write_json({"entries": [[1, 2], [2, 4]]}))
    assert code == EXIT_RANK_ERROR
    code, _ = run_cli('localize', '--uniform', '2,4', '--basis', '1,2,3')
    assert code == EXIT_DOMAIN_ERROR
    code, _ = run_cli('class', '2', '20')
    assert code == EXIT_SIZE_LIMIT
    code, _ = run_cli('class', '2', '7')
    assert code == EXIT_SIZE_LIMIT


def test_localize_single_and_all():
    V = VarSpace(2, 4)
    code, document = run_cli('localize', '--uniform', '2,4', '--basis', '1,2')
    assert code == 0
    expected = Poly.t(V, 3) + Poly.t(V, 4) - Poly.t(V, 1) - Poly.t(V, 2)
    assert Poly.from_json(V, document['value']) == expected

    code, document = run_cli('localize', '--uniform', '1,2', '--all')
    assert code == 0
    entries = document['tuple']
    assert [entry['basis'] for entry in entries] == [[1], [2]]
    assert all(Poly.from_json(VarSpace(1, 2), entry['value']) == 1 for entry in entries)


def test_localize_certify_mode():
    code, document = run_cli('localize', '--uniform', '2,4', '--all', '--mode', 'certify', '--trials', '3', '--seed', '7')
    assert code == 0
    assert document['mode'] == 'certify' and document['trials'] == 3 and document['seed'] == 7
    assert len(document['points']) == 3
    assert len(document['values']) == 6


def test_tuple_command():
    code, document = run_cli('tuple', '--uniform', '2,4')
    assert code == 0
    assert document['gkm_violations'] == []
    assert document['codimension'] == 1


def test_class_command():
    code, document = run_cli('class', '2', '4', '--form', 'lr')
    assert code == 0
    V = VarSpace(2, 4)
    assert Poly.from_json(V, document['class']['value']) == uniform_matrix_class_lr(2, 4).value
    assert sorted(tuple(term['partition']) for term in document['class']['schur']) == [(), (1,)]


def test_lift_command():
    code, document = run_cli('lift', '--uniform', '2,4')
    assert code == 0
    assert document['convention'] == {'eps_u': -1, 'eps_t': -1}
    assert Poly.from_json(VarSpace(2, 4), document['class']['value']) == uniform_matrix_class_lr(2, 4).value
    assert document['within_width_bound'] is True


def test_lift_and_expand_square_identity():
    path = write_json({"rows": 2, "cols": 2, "entries": [[1, 0], [0, 1]]})
    code, document = run_cli('lift', path)
    assert code == 0
    assert document['convention'] == {'eps_u': -1, 'eps_t': -1}
    assert Poly.from_json(VarSpace(2, 2), document['class']['value']) == 1
    code, document = run_cli('expand', path)
    assert code == 0
    assert [term['partition'] for term in document['expansion']['coefficients']] == [[]]


def test_degree_and_klyachko():
    code, document = run_cli('degree', '2', '4')
    assert code == 0 and document['degree'] == 4
    code, document = run_cli('degree', '2', '5')
    assert document['degree'] == 10
    code, document = run_cli('klyachko', '2,1', '2', '4', '--variant', '0')
    assert code == 0 and document['coefficient'] == 2
    code, document = run_cli('klyachko', '2,1', '2', '4', '--variant', '1')
    assert document['coefficient'] == 0
    code, _ = run_cli('klyachko', '2,2', '2', '4')
    assert code == EXIT_DOMAIN_ERROR


def test_verify_suites():
    code, document = run_cli('verify', 'cauchy')
    assert code == 0
    assert document['passed'] is True
    assert document['first_counterexample'] is None
    code, document = run_cli('verify', 'klyachko')
    assert code == 0
    notes = document['suites'][0]['notes']
    assert notes and notes[0]['details']['literal_variant'] == 0
    code, document = run_cli('verify', 'lemma-vs-closed', '--max-n', '4')
    assert code == 0 and document['passed'] is True


def test_verify_gkm_certify():
    code, document = run_cli('verify', 'gkm', '--mode', 'certify', '--max-n', '4', '--trials', '3', '--seed', '5')
    assert code == 0
    assert document['mode'] == 'certify' and document['trials'] == 3 and document['seed'] == 5
    suite = document['suites'][0]
    assert suite['finished_at'] is not None
    cases = suite['cases']
    assert cases
    for case in cases:
        details = case['details']
        assert details['mode'] == 'certify'
        assert details['trials'] == 3 and details['seed'] == 5
        assert details['failure_probability_bound'].endswith('^3')


def main():
    """모든 테스트 실행"""
    logger.info("\n" + "=" * 60)
    logger.info("orbitclass CLI Tests")
    logger.info("=" * 60 + "\n")

    tests = {
        "Matroid of identity": test_matroid_of_identity,
        "Input errors": test_input_errors,
        "Localize": test_localize_single_and_all,
        "Localize certify": test_localize_certify_mode,
        "Tuple": test_tuple_command,
        "Class": test_class_command,
        "Lift": test_lift_command,
        "Lift / expand square identity": test_lift_and_expand_square_identity,
        "Degree / Klyachko": test_degree_and_klyachko,
        "Verify": test_verify_suites,
        "Verify gkm certify": test_verify_gkm_certify,
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
