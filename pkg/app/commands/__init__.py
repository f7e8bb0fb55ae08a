"""
서브커맨드 패키지

이 패키지는 모든 CLI 서브커맨드를 포함합니다.
각 서브커맨드 묶음은 별도의 파일로 분리되어 있으며, register(app) 으로 등록합니다.
"""
