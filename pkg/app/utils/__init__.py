"""
유틸리티 패키지

검증 스위트를 받쳐 주는 부품들입니다.
- certify: 무작위 정확 평가에 의한 항등식 인증
- verify_params: 스위트 파라미터 JSON 관리
- verify_report: 스위트별 케이스 결과 저장소
"""
