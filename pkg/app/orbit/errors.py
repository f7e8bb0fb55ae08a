"""
오비트 클래스 계산 예외 정의

모든 예외는 OrbitClassError를 상속하며, CLI 종료 코드와
JSON 직렬화(to_dict)를 함께 제공합니다.
"""

from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_RANK_ERROR = 3
EXIT_DOMAIN_ERROR = 4
EXIT_SIZE_LIMIT = 5


class OrbitClassError(Exception):
    """계산 라이브러리의 기본 예외"""

    exit_code = EXIT_DOMAIN_ERROR

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    @property
    def error_type(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        """JSON 직렬화 가능한 딕셔너리로 변환"""
        return {
            'error': self.error_type,
            'message': self.message,
            'exit_code': self.exit_code,
            'details': self.details,
        }


# exactpoly
class VarSpaceMismatch(OrbitClassError):
    pass


class NotDivisible(OrbitClassError):
    pass


class DenominatorRemains(OrbitClassError):
    pass


class DenominatorZero(OrbitClassError):
    pass


class ZeroPolynomial(OrbitClassError):
    pass


# symfunc
class NotSymmetric(OrbitClassError):
    pass


class DoesNotFit(OrbitClassError):
    pass


class TransposeOverflow(OrbitClassError):
    pass


class ShapeOutOfBox(OrbitClassError):
    pass


# matroid
class RankDeficient(OrbitClassError):
    exit_code = EXIT_RANK_ERROR

    def __init__(self, rank: int, rows: int):
        super().__init__(
            f'matrix has rank {rank}, expected full row rank {rows}',
            {'rank': rank, 'rows': rows},
        )
        self.rank = rank


class InvalidMatroid(OrbitClassError):
    pass


class InvalidBasis(OrbitClassError):
    pass


# localize
class NotUniform(OrbitClassError):
    pass


class InternalNonPolynomial(OrbitClassError):
    """국소화 합이 다항식으로 정리되지 않음 (버그를 의미)"""

    exit_code = EXIT_VERIFICATION_FAILED


class CodimMismatch(OrbitClassError):
    exit_code = EXIT_VERIFICATION_FAILED


class NotHomogeneous(OrbitClassError):
    """튜플 항목이 공통 차수의 동차식이 아님"""


# split
class OverflowNonEmpty(OrbitClassError):
    pass


class NoConsistentConvention(OrbitClassError):
    exit_code = EXIT_VERIFICATION_FAILED


class NotInSpan(OrbitClassError):
    exit_code = EXIT_VERIFICATION_FAILED


# classes
class ShapeConstraint(OrbitClassError):
    pass


# cli
class ParseError(OrbitClassError):
    exit_code = EXIT_PARSE_ERROR


class SizeLimit(OrbitClassError):
    exit_code = EXIT_SIZE_LIMIT
