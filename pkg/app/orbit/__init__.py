"""
오비트 클래스 계산 패키지

행렬 궤도 폐포와 Grassmannian 토러스 궤도 폐포의 동변 Chow / K-클래스를
정확한 정수 산술로 계산합니다.

모듈 구성:
    exactpoly: Z[u, t] 다항식, 선형형식 분모 분수, Laurent 분수
    symfunc: 분할, Schur / factorial Schur 다항식, LR 계수
    matroid: 유리수 행렬의 매트로이드, lex-first 기저
    localize: 고정점 국소화, GKM 조건
    classes: 균등 매트로이드의 닫힌 형태 공식
    split: Schubert 전개와 행렬 공간으로의 lift
"""

from app.orbit.classes import (
    AmbientClass,
    uniform_degree,
    uniform_matrix_class_lr,
    uniform_matrix_class_omega,
    uniform_orbit_localized,
)
from app.orbit.errors import OrbitClassError
from app.orbit.exactpoly import Poly, VarSpace
from app.orbit.localize import (
    GKMTuple,
    full_orbit_tuple,
    gkm_check,
    orbit_chow_localization,
    orbit_k_localization,
)
from app.orbit.matroid import Matroid, RationalMatrix, matroid_of_matrix
from app.orbit.split import (
    RestrictionConvention,
    SchubertExpansion,
    lift,
    resolve_convention,
    schubert_expand_tuple,
    tuple_of_ambient,
)
from app.orbit.symfunc import Partition

__all__ = [
    'AmbientClass',
    'GKMTuple',
    'Matroid',
    'OrbitClassError',
    'Partition',
    'Poly',
    'RationalMatrix',
    'RestrictionConvention',
    'SchubertExpansion',
    'VarSpace',
    'full_orbit_tuple',
    'gkm_check',
    'lift',
    'matroid_of_matrix',
    'orbit_chow_localization',
    'orbit_k_localization',
    'resolve_convention',
    'schubert_expand_tuple',
    'tuple_of_ambient',
    'uniform_degree',
    'uniform_matrix_class_lr',
    'uniform_matrix_class_omega',
    'uniform_orbit_localized',
]
