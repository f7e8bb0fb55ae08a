"""
orbitclass 애플리케이션 팩토리

이 모듈은 CLI 애플리케이션을 생성하고 초기화하는 팩토리 함수를 제공합니다.
설정 로드, 로깅, 서브커맨드 등록, 예외 -> 종료 코드 매핑을 담당합니다.
"""

import os
import sys
import json
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

from config import config

from app.orbit.errors import EXIT_OK, EXIT_VERIFICATION_FAILED, OrbitClassError


class OrbitClassApp:
    """서브커맨드 레지스트리와 설정을 들고 있는 애플리케이션 객체"""

    def __init__(self, name: str):
        self.name = name
        self.config: Dict[str, Any] = {}
        self.logger = logging.getLogger(name)
        self.commands: Dict[str, Callable] = {}
        self._error_handlers: List[Tuple[Type[BaseException], Callable]] = []

    def config_from_object(self, obj) -> None:
        for key in dir(obj):
            if key.isupper():
                self.config[key] = getattr(obj, key)

    def command(self, name: str):
        """서브커맨드 핸들러 등록 데코레이터"""
        def decorator(func: Callable) -> Callable:
            self.commands[name] = func
            return func
        return decorator

    def errorhandler(self, exc_type: Type[BaseException]):
        """예외 타입별 핸들러 등록 데코레이터 (먼저 등록한 것이 우선)"""
        def decorator(func: Callable) -> Callable:
            self._error_handlers.append((exc_type, func))
            return func
        return decorator

    def handle_error(self, error: BaseException) -> int:
        for exc_type, handler in self._error_handlers:
            if isinstance(error, exc_type):
                return handler(error)
        raise error

    def dispatch(self, args) -> int:
        """
        파싱된 인자로 서브커맨드를 실행합니다.

        Args:
            args (argparse.Namespace): main.parse_arguments() 결과

        Returns:
            int: 프로세스 종료 코드
        """
        handler = self.commands.get(args.command)
        if handler is None:
            self.logger.error(f'알 수 없는 명령: {args.command}')
            return EXIT_VERIFICATION_FAILED
        try:
            result = handler(self, args)
        except Exception as error:
            return self.handle_error(error)
        return EXIT_OK if result is None else result


def create_app(config_name: Optional[str] = None, overrides: Optional[Dict[str, Any]] = None) -> OrbitClassApp:
    """
    애플리케이션 팩토리 함수

    Args:
        config_name (str): 설정 이름 ('development', 'production', 'testing')
                          None인 경우 환경 변수 ORBITCLASS_ENV를 사용하거나 'default' 사용
        overrides (dict): 명령행 인자로 덮어쓸 설정 값 (예: LOG_LEVEL, WORKERS)

    Returns:
        OrbitClassApp: 초기화된 애플리케이션 인스턴스
    """
    # 설정 이름 결정
    if config_name is None:
        config_name = os.getenv('ORBITCLASS_ENV', 'default')
    if config_name not in config:
        config_name = 'default'

    app = OrbitClassApp('orbitclass')

    # 설정 로드
    app.config_from_object(config[config_name])
    app.config.update({key: value for key, value in (overrides or {}).items() if value is not None})
    config[config_name].init_app(app)

    # 로깅 설정
    setup_logging(app)

    # 서브커맨드 등록
    register_commands(app)

    # 에러 핸들러 등록
    register_error_handlers(app)

    app.logger.debug(f'orbitclass {app.config["VERSION"]} 가 {config_name} 모드로 시작되었습니다.')

    return app


def setup_logging(app: OrbitClassApp) -> None:
    """
    로깅 설정

    stdout 은 JSON 문서 전용이므로 콘솔 로그는 stderr 로 보냅니다.

    Args:
        app (OrbitClassApp): 애플리케이션 인스턴스
    """
    # 로그 레벨 설정
    log_level = getattr(logging, str(app.config['LOG_LEVEL']).upper(), logging.INFO)

    # 로그 포맷 설정
    formatter = logging.Formatter(app.config['LOG_FORMAT'])

    # 콘솔 핸들러 설정
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    package_logger = logging.getLogger('app')
    package_logger.setLevel(log_level)
    app.logger.setLevel(log_level)
    for target in (package_logger, app.logger):
        target.handlers.clear()
        target.addHandler(console_handler)
        target.propagate = False

    # 파일 핸들러 설정 (LOG_DIR 지정 시)
    log_dir = app.config.get('LOG_DIR')
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        file_handler = logging.FileHandler(os.path.join(log_dir, 'orbitclass.log'), encoding='utf-8')
        file_handler.setFormatter(formatter)
        package_logger.addHandler(file_handler)
        app.logger.addHandler(file_handler)


def register_commands(app: OrbitClassApp) -> None:
    """
    서브커맨드 등록

    Args:
        app (OrbitClassApp): 애플리케이션 인스턴스
    """
    from app.commands.matroid import register as register_matroid
    from app.commands.localize import register as register_localize
    from app.commands.classes import register as register_classes
    from app.commands.split import register as register_split
    from app.commands.verify import register as register_verify

    register_matroid(app)
    register_localize(app)
    register_classes(app)
    register_split(app)
    register_verify(app)


def register_error_handlers(app: OrbitClassApp) -> None:
    """
    전역 에러 핸들러 등록

    Args:
        app (OrbitClassApp): 애플리케이션 인스턴스
    """

    @app.errorhandler(OrbitClassError)
    def handle_orbit_error(error: OrbitClassError) -> int:
        """계산 라이브러리 예외: to_dict() JSON 을 stderr 에 출력"""
        app.logger.error(f'{error.error_type}: {error.message}')
        print(json.dumps(error.to_dict(), ensure_ascii=False), file=sys.stderr)
        return error.exit_code

    @app.errorhandler(Exception)
    def handle_exception(error: Exception) -> int:
        """일반 예외 핸들러"""
        app.logger.error(f'처리되지 않은 예외: {error}', exc_info=True)
        payload = {'error': type(error).__name__, 'message': str(error), 'exit_code': EXIT_VERIFICATION_FAILED}
        print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
