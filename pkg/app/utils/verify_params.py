"""
검증 스위트 파라미터 관리 모듈

verify 스위트별 기본값(max_n, trials 등)을 JSON 파일에서 읽고 검증합니다.
파일이 없거나 깨져 있으면 내장 기본값을 사용합니다.
"""

import json
import os
from threading import Lock
from typing import Any, Dict, Optional


SUITES = (
    'lemma-vs-closed',
    'lr-vs-omega',
    'gkm',
    'kms',
    'cauchy',
    'roundtrip',
    'klyachko',
    'degree',
    'widthbound',
    'matroid-invariance',
)

DEFAULT_VERIFY_PARAMS: Dict[str, Any] = {
    "suites": {
        "lemma-vs-closed": {"max_n": 6},
        "lr-vs-omega": {"max_n": 6},
        "gkm": {"max_n": 6, "corruptions": 3},
        "kms": {"max_n": 5},
        "cauchy": {"max_size": 3},
        "roundtrip": {"cases": [[2, 4], [2, 5], [3, 5], [3, 6]]},
        "klyachko": {"cases": [[[2, 1], 2, 4]]},
        "degree": {"max_n": 6},
        "widthbound": {"cases": [[2, 4], [2, 5], [3, 5], [3, 6]]},
        "matroid-invariance": {},
    },
    "certify": {
        "trials": 20,
        "seed": 20240611,
    },
}


def _deep_copy(data: Dict[str, Any]) -> Dict[str, Any]:
    return json.loads(json.dumps(data))


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = _deep_copy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def get_default_parameter_file_path() -> str:
    env_path = os.environ.get("VERIFY_PARAMS_FILE")
    if env_path:
        return os.path.abspath(env_path)
    project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
    return os.path.join(project_root, "config", "verify_params.json")


def _size_pairs(value: Any, fallback: list) -> list:
    try:
        pairs = [[int(r), int(n)] for r, n in value]
    except (TypeError, ValueError):
        return [list(pair) for pair in fallback]
    return [pair for pair in pairs if 1 <= pair[0] < pair[1] <= 16]


class VerifyParameterManager:
    """검증 스위트 파라미터 JSON 파일 관리자"""

    _lock = Lock()

    def __init__(self, parameter_file_path: Optional[str] = None):
        self.parameter_file_path = parameter_file_path or get_default_parameter_file_path()

    def load(self) -> Dict[str, Any]:
        with self._lock:
            try:
                with open(self.parameter_file_path, "r", encoding="utf-8") as file:
                    loaded = json.load(file)
            except (json.JSONDecodeError, OSError):
                loaded = {}
            if not isinstance(loaded, dict):
                loaded = {}
            merged = _deep_merge(DEFAULT_VERIFY_PARAMS, loaded)
            self.sanitize(merged)
            return merged

    @staticmethod
    def sanitize(params: Dict[str, Any]) -> None:
        suites = params.setdefault("suites", {})
        defaults = DEFAULT_VERIFY_PARAMS["suites"]
        for name in SUITES:
            suite = suites.setdefault(name, {})
            if not isinstance(suite, dict):
                suite = suites[name] = _deep_copy(defaults[name])
            if "max_n" in defaults[name]:
                try:
                    max_n = int(suite.get("max_n", defaults[name]["max_n"]))
                except (TypeError, ValueError):
                    max_n = defaults[name]["max_n"]
                suite["max_n"] = max(2, min(max_n, 16))
            if "corruptions" in defaults[name]:
                suite["corruptions"] = max(1, int(suite.get("corruptions", defaults[name]["corruptions"])))
            if "max_size" in defaults[name]:
                suite["max_size"] = max(1, min(int(suite.get("max_size", 3)), 4))
            if name in ("roundtrip", "widthbound"):
                suite["cases"] = _size_pairs(suite.get("cases"), defaults[name]["cases"])

        certify = params.setdefault("certify", {})
        certify["trials"] = max(1, int(certify.get("trials", 20)))
        certify["seed"] = int(certify.get("seed", 20240611))
