"""
서브커맨드 공통 입출력

실행 설정(RunConfig) 결정, 입력 파일 파싱, JSON 문서 출력을 담당합니다.
stdout 에는 호출마다 정확히 하나의 JSON 문서만 씁니다.
"""

import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.orbit.errors import InvalidBasis, ParseError, ShapeConstraint, SizeLimit
from app.orbit.matroid import Matroid, RationalMatrix, matroid_of_matrix
from app.orbit.symfunc import Partition

logger = logging.getLogger(__name__)

MODE_EXACT = 'exact'
MODE_CERTIFY = 'certify'
OUTPUT_JSON = 'json'
OUTPUT_PRETTY = 'pretty'


@dataclass(frozen=True)
class RunConfig:
    """mode / trials / seed / output"""

    mode: str = MODE_EXACT
    trials: int = 20
    seed: int = 20240611
    output: str = OUTPUT_JSON

    def __post_init__(self):
        if self.mode not in (MODE_EXACT, MODE_CERTIFY):
            raise ParseError(f'unknown mode: {self.mode}')
        if self.trials < 1:
            raise ParseError(f'trials must be at least 1, got {self.trials}')
        if self.output not in (OUTPUT_JSON, OUTPUT_PRETTY):
            raise ParseError(f'unknown output format: {self.output}')

    def to_dict(self) -> Dict[str, Any]:
        data = {'mode': self.mode, 'seed': self.seed}
        if self.mode == MODE_CERTIFY:
            data['trials'] = self.trials
        return data


def resolve_run_config(app, args, max_n: int) -> RunConfig:
    """명령행 인자 > 설정 클래스 순으로 RunConfig 를 결정

    mode 를 주지 않으면 max_n <= EXACT_MAX_N 일 때 exact, 아니면 certify.
    """
    mode = getattr(args, 'mode', None)
    if mode is None:
        mode = MODE_EXACT if max_n <= app.config['EXACT_MAX_N'] else MODE_CERTIFY
    trials = getattr(args, 'trials', None) or app.config['TRIALS']
    seed = getattr(args, 'seed', None)
    return RunConfig(
        mode=mode,
        trials=trials,
        seed=app.config['SEED'] if seed is None else seed,
        output=getattr(args, 'output', None) or OUTPUT_JSON,
    )


def check_size(app, n: int, force: bool = False) -> None:
    """n > HARD_MAX_N 는 항상, n > EXACT_MAX_N 는 --force 없이 거부"""
    if n > app.config['HARD_MAX_N']:
        raise SizeLimit(f'n={n} exceeds the hard limit {app.config["HARD_MAX_N"]}', {'n': n})
    if n > app.config['EXACT_MAX_N'] and not force:
        raise SizeLimit(
            f'n={n} exceeds the exact-mode limit {app.config["EXACT_MAX_N"]}; pass --force to compute anyway',
            {'n': n, 'limit': app.config['EXACT_MAX_N']},
        )


def read_json_file(path: str) -> Any:
    try:
        with open(path, 'r', encoding='utf-8') as file:
            return json.load(file)
    except (OSError, UnicodeDecodeError) as error:
        raise ParseError(f'cannot read {path}: {error}') from error
    except json.JSONDecodeError as error:
        raise ParseError(f'{path} is not valid JSON: {error}') from error


def parse_size(text: str) -> Tuple[int, int]:
    """'R,N' -> (r, n)"""
    try:
        r, n = (int(part) for part in text.split(','))
    except ValueError as error:
        raise ParseError(f'expected R,N but got {text!r}') from error
    if not 1 <= r <= n:
        raise ShapeConstraint(f'need 1 <= r <= n, got r={r}, n={n}', {'r': r, 'n': n})
    return r, n


def parse_basis(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as error:
        raise InvalidBasis(f'basis must be comma-separated integers, got {text!r}') from error


def parse_partition(text: str) -> Partition:
    try:
        parts = sorted((int(part) for part in text.split(',') if part.strip()), reverse=True)
        return Partition.of(parts)
    except ValueError as error:
        raise ShapeConstraint(f'invalid partition {text!r}: {error}') from error


def load_matroid(app, args) -> Matroid:
    """--uniform R,N 또는 행렬 / 매트로이드 JSON 파일에서 매트로이드를 만듭니다."""
    uniform = getattr(args, 'uniform', None)
    if uniform:
        r, n = parse_size(uniform)
        check_size(app, n, force=True)
        return Matroid.uniform(r, n)
    if not getattr(args, 'input', None):
        raise ParseError('an input file or --uniform R,N is required')
    document = read_json_file(args.input)
    if not isinstance(document, dict):
        raise ParseError('input document must be a JSON object')
    if 'entries' in document:
        matrix = RationalMatrix.from_json(document)
        check_size(app, matrix.cols, force=True)
        return matroid_of_matrix(matrix)
    if 'bases' in document:
        return Matroid.from_json(document)
    raise ParseError('input must be a matrix ("entries") or a matroid ("bases") document')


def envelope(app, command: str, run: RunConfig, payload: Dict[str, Any],
             r: Optional[int] = None, n: Optional[int] = None,
             convention: Optional[Dict[str, int]] = None) -> Dict[str, Any]:
    """재현에 필요한 메타데이터를 붙인 출력 문서"""
    document = {
        'version': app.config['VERSION'],
        'command': command,
        'r': r,
        'n': n,
        **run.to_dict(),
    }
    if convention is not None:
        document['convention'] = convention
    document.update(payload)
    return document


def emit(document: Dict[str, Any], run: RunConfig, stream=None) -> None:
    stream = stream or sys.stdout
    if run.output == OUTPUT_PRETTY:
        text = json.dumps(document, ensure_ascii=False, indent=2)
    else:
        text = json.dumps(document, ensure_ascii=False, separators=(',', ':'))
    stream.write(text + '\n')


def sizes_up_to(max_n: int, min_n: int = 2) -> Sequence[Tuple[int, int]]:
    """1 <= r < n, min_n <= n <= max_n"""
    return [(r, n) for n in range(min_n, max_n + 1) for r in range(1, n)]
