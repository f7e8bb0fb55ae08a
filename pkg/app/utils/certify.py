"""
무작위 평가 기반 항등식 인증 (certify 모드)

정확한 기호 계산이 부담스러운 크기에서, 양변을 무작위 유리점에서 정확히
평가해 비교합니다. 좌표는 [-COORD_BOUND, COORD_BOUND] 정수이고 t-좌표는
서로 다르게 뽑아 선형형식 분모가 0 이 되지 않게 합니다.
실패 확률 상한은 Schwartz-Zippel 추정 (d / (2B+1))^k 로 보고합니다.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Tuple

from app.orbit.exactpoly import Poly

logger = logging.getLogger(__name__)

COORD_BOUND = 10 ** 6

Point = Tuple[List[Fraction], List[Fraction]]


@dataclass
class CertifyReport:
    trials: int
    seed: int
    degree: int
    passed: bool = True
    failures: List[dict] = field(default_factory=list)

    @property
    def bound(self) -> str:
        return failure_bound(self.degree, self.trials)

    def to_dict(self) -> dict:
        return {
            'mode': 'certify',
            'trials': self.trials,
            'seed': self.seed,
            'degree': self.degree,
            'failure_probability_bound': self.bound,
            'passed': self.passed,
            'first_failure': self.failures[0] if self.failures else None,
        }


def failure_bound(degree: int, trials: int, coord_bound: int = COORD_BOUND) -> str:
    """Schwartz-Zippel 상한 문자열 "(d/(2B+1))^k" """
    return f'({max(degree, 0)}/{2 * coord_bound + 1})^{trials}'


def random_points(n: int, r: int, trials: int, seed: int, coord_bound: int = COORD_BOUND) -> List[Point]:
    """(t 좌표 n 개, u 좌표 r 개) 무작위 점 목록

    Args:
        n: t-변수 개수
        r: u-변수 개수
        trials: 점 개수
        seed: 난수 시드 (같은 시드는 같은 점을 줌)

    Returns:
        List[Point]: t-좌표는 서로 다른 정수
    """
    rng = random.Random(seed)
    points = []
    for _ in range(trials):
        t_values = [Fraction(v) for v in rng.sample(range(-coord_bound, coord_bound + 1), n)]
        u_values = [Fraction(rng.randint(-coord_bound, coord_bound)) for _ in range(r)]
        points.append((t_values, u_values))
    return points


def certify_values(
    left: Callable[[Point], Fraction],
    right: Callable[[Point], Fraction],
    n: int,
    r: int,
    degree: int,
    trials: int,
    seed: int,
    label: str = '',
) -> CertifyReport:
    """두 평가 함수가 무작위 점에서 모두 같은지 확인"""
    report = CertifyReport(trials=trials, seed=seed, degree=degree)
    for index, point in enumerate(random_points(n, r, trials, seed)):
        a, b = left(point), right(point)
        if a != b:
            report.passed = False
            report.failures.append({
                'trial': index,
                't': [str(v) for v in point[0]],
                'u': [str(v) for v in point[1]],
                'left': str(a),
                'right': str(b),
            })
            logger.error('certify %s failed at trial %d', label, index)
            break
    logger.debug('certify %s: %d trials, bound %s', label, trials, report.bound)
    return report


def certify_poly_equal(a: Poly, b: Poly, trials: int, seed: int, label: str = '') -> CertifyReport:
    varspace = a.varspace
    degree = max(a.total_degree(), b.total_degree())
    return certify_values(
        lambda point: a.evaluate(point[0], point[1]),
        lambda point: b.evaluate(point[0], point[1]),
        varspace.n, varspace.r, degree, trials, seed, label,
    )

