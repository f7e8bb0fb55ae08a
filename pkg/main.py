"""
orbitclass 명령행 진입점

행렬 궤도 폐포 / 토러스 궤도 폐포의 동변 클래스를 계산하고 검증합니다.
stdout 에는 호출마다 JSON 문서 하나를, 로그는 stderr 에 씁니다.

실행 방법:
    python main.py matroid matrix.json
    python main.py verify all
    ORBITCLASS_ENV=production python main.py class 2 5 --form omega
"""

import sys
import argparse
from typing import List, Optional

from dotenv import load_dotenv

# .env 파일에서 환경변수 로드
load_dotenv()

from app import create_app
from app.utils.verify_params import SUITES


def _add_common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--mode', choices=['exact', 'certify'], default=None,
                        help='exact: 기호 계산, certify: 무작위 평가 (기본값: n<=6 이면 exact)')
    parser.add_argument('--trials', type=int, default=None, help='certify 모드 시행 횟수 (기본값: 20)')
    parser.add_argument('--seed', type=int, default=None, help='certify 모드 난수 시드')
    parser.add_argument('--output', choices=['json', 'pretty'], default='json', help='출력 형식')
    parser.add_argument('--log-level', default=None, help='로그 레벨 (LOG_LEVEL 환경 변수보다 우선)')
    parser.add_argument('--workers', type=int, default=None, help='기저별 국소화 스레드 수')


def _add_input_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('input', nargs='?', help='행렬 또는 매트로이드 JSON 파일')
    parser.add_argument('--uniform', metavar='R,N', help='균등 매트로이드 U(R,N) 사용')


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    커맨드라인 인자 파싱

    Args:
        argv: 인자 목록 (None 이면 sys.argv[1:])

    Returns:
        argparse.Namespace: 파싱된 인자들
    """
    parser = argparse.ArgumentParser(
        description='행렬 궤도 폐포의 동변 Chow / K-클래스 계산기',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
예시:
  python main.py matroid matrix.json              # 행렬의 매트로이드
  python main.py localize --uniform 2,4 --basis 1,2
  python main.py tuple --uniform 2,5              # 전체 GKM 튜플 + 검사
  python main.py class 2 4 --form lr              # 2s_1(u) + s_1(t)
  python main.py lift --uniform 3,5               # 분할 사상으로 행렬 공간 클래스
  python main.py degree 2 5                       # 10
  python main.py klyachko 2,1 2 4 --variant 0     # 2
  python main.py verify all --max-n 5
        '''
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    matroid = subparsers.add_parser('matroid', help='행렬 -> 매트로이드')
    _add_input_options(matroid)

    localize = subparsers.add_parser('localize', help='고정점 국소화')
    _add_input_options(localize)
    localize.add_argument('--basis', help='쉼표로 구분한 r-부분집합 (예: 1,2)')
    localize.add_argument('--all', action='store_true', help='모든 r-부분집합')
    localize.add_argument('--k-theory', action='store_true', help='K-이론 국소화 출력')

    gkm_tuple = subparsers.add_parser('tuple', help='전체 GKM 튜플과 GKM 조건 검사')
    _add_input_options(gkm_tuple)

    ambient = subparsers.add_parser('class', help='균등 행렬 궤도 폐포의 클래스')
    ambient.add_argument('r', type=int)
    ambient.add_argument('n', type=int)
    ambient.add_argument('--form', choices=['lr', 'omega', 'localized'], default='lr')
    ambient.add_argument('--complement', choices=['transposed', 'literal'], default='transposed',
                         help='localized 형태의 여분할 변형')
    ambient.add_argument('--force', action='store_true', help='n > 6 에서도 exact 계산')

    for name, text in (('lift', '튜플 -> 행렬 공간 클래스'), ('expand', '튜플 -> Schubert 전개')):
        sub = subparsers.add_parser(name, help=text)
        _add_input_options(sub)
        sub.add_argument('--force', action='store_true', help='n > 6 에서도 exact 계산')

    degree = subparsers.add_parser('degree', help='균등 행렬 궤도 폐포의 차수')
    degree.add_argument('r', type=int)
    degree.add_argument('n', type=int)

    klyachko = subparsers.add_parser('klyachko', help='Klyachko 계수')
    klyachko.add_argument('partition', help='쉼표로 구분한 분할 (예: 2,1)')
    klyachko.add_argument('r', type=int)
    klyachko.add_argument('n', type=int)
    klyachko.add_argument('--variant', type=int, choices=[0, 1], default=1,
                          help='합의 시작 첨자 (1: 공식 그대로, 0: i=0 항 포함)')

    verify = subparsers.add_parser('verify', help='검증 스위트 실행')
    verify.add_argument('suite', choices=list(SUITES) + ['all'])
    verify.add_argument('--max-n', type=int, default=None, help='검사할 최대 n')

    for sub in subparsers.choices.values():
        _add_common_options(sub)

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_arguments(argv)
    app = create_app(overrides={'LOG_LEVEL': args.log_level, 'WORKERS': args.workers})
    return app.dispatch(args)


if __name__ == '__main__':
    sys.exit(main())
