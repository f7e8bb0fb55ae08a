"""
애플리케이션 설정 파일

이 파일은 orbitclass CLI의 모든 설정을 중앙에서 관리합니다.
환경별로 다른 설정을 사용할 수 있도록 구성되어 있습니다.
"""

import os
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()


class Config:
    """기본 설정 클래스"""

    VERSION = '1.0.0'
    APP_NAME = 'orbitclass'

    # 로깅 설정
    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'INFO'
    LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    # 지정하면 LOG_DIR/orbitclass.log 에도 기록
    LOG_DIR = os.environ.get('ORBITCLASS_LOG_DIR')

    # 계산 크기 제한
    # EXACT_MAX_N: 이 크기까지는 exact 모드가 기본, 그 위는 certify 모드
    # HARD_MAX_N: 기저 비트셋 한계
    EXACT_MAX_N = int(os.environ.get('ORBITCLASS_EXACT_MAX_N') or 6)
    HARD_MAX_N = 16

    # certify 모드 (무작위 평가)
    TRIALS = int(os.environ.get('ORBITCLASS_TRIALS') or 20)
    SEED = int(os.environ.get('ORBITCLASS_SEED') or 20240611)
    COORD_BOUND = 10 ** 6

    # 기저별 국소화 스레드 수
    WORKERS = int(os.environ.get('ORBITCLASS_WORKERS') or 1)

    # 검증 스위트 파라미터 파일
    VERIFY_PARAMS_FILE = os.environ.get('VERIFY_PARAMS_FILE') or os.path.join(
        os.path.dirname(os.path.abspath(__file__)), 'config', 'verify_params.json'
    )

    @staticmethod
    def init_app(app):
        """애플리케이션 초기화 시 호출되는 메서드"""
        # 로그 폴더가 지정되어 있으면 생성
        if app.config['LOG_DIR']:
            os.makedirs(app.config['LOG_DIR'], exist_ok=True)


class DevelopmentConfig(Config):
    """개발 환경 설정"""
    DEBUG = True
    TESTING = False


class ProductionConfig(Config):
    """프로덕션 환경 설정"""
    DEBUG = False
    TESTING = False

    LOG_LEVEL = os.environ.get('LOG_LEVEL') or 'WARNING'

    @classmethod
    def init_app(cls, app):
        Config.init_app(app)

        if app.config['WORKERS'] < 1:
            raise ValueError("ORBITCLASS_WORKERS 는 1 이상이어야 합니다.")


class TestingConfig(Config):
    """테스트 환경 설정"""
    DEBUG = True
    TESTING = True

    LOG_LEVEL = 'WARNING'
    TRIALS = 5


# 환경별 설정 매핑
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
