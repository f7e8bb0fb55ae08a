"""
검증 결과 기록 저장소

스위트별 케이스 결과를 스레드 안전하게 모으고, 첫 반례와 요약을 제공합니다.
"""

from collections import deque
from datetime import datetime
from threading import Lock
from typing import Any, Dict, List, Optional


class VerifyReport:
    def __init__(self, suite: str, max_cases: int = 5000):
        self.suite = suite
        self._lock = Lock()
        self._cases = deque(maxlen=max_cases)
        self._case_seq = 0
        self._passed = 0
        self._failed = 0
        self._notes: List[Dict[str, Any]] = []
        self._first_failure: Optional[Dict[str, Any]] = None
        self.started_at = datetime.now().isoformat()
        self.finished_at: Optional[str] = None

    def record_case(self, name: str, passed: bool, details: Optional[Any] = None) -> None:
        with self._lock:
            self._case_seq += 1
            case = {
                "id": self._case_seq,
                "name": name,
                "passed": bool(passed),
                "details": details,
            }
            self._cases.append(case)
            if passed:
                self._passed += 1
            else:
                self._failed += 1
                if self._first_failure is None:
                    self._first_failure = case

    def record_note(self, summary: str, details: Optional[Any] = None) -> None:
        """실패는 아니지만 보고해야 할 불일치 (예: 공식 문자 그대로의 변형)"""
        with self._lock:
            self._notes.append({"summary": summary, "details": details})

    def finish(self) -> None:
        """스위트 종료 시각 기록 (처음 한 번만)"""
        with self._lock:
            if self.finished_at is None:
                self.finished_at = datetime.now().isoformat()

    @property
    def passed(self) -> bool:
        with self._lock:
            return self._failed == 0

    @property
    def first_failure(self) -> Optional[Dict[str, Any]]:
        with self._lock:
            return self._first_failure

    def get_cases(self, limit: Optional[int] = None) -> List[Dict[str, Any]]:
        with self._lock:
            cases = list(self._cases)
        return cases if limit is None else cases[: max(1, limit)]

    def get_overview(self) -> Dict[str, Any]:
        with self._lock:
            return {
                "suite": self.suite,
                "started_at": self.started_at,
                "finished_at": self.finished_at,
                "passed": self._failed == 0,
                "counts": {"passed": self._passed, "failed": self._failed},
                "first_failure": self._first_failure,
                "notes": list(self._notes),
                "cases": list(self._cases),
            }
