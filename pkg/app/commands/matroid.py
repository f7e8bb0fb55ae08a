"""
matroid 서브커맨드

행렬 JSON 파일에서 매트로이드(기저 목록)를 추출해 출력합니다.
"""

import logging

from app.commands.common import emit, envelope, load_matroid, resolve_run_config
from app.orbit.matroid import exchange_edges, is_uniform

logger = logging.getLogger(__name__)


def cmd_matroid(app, args) -> int:
    m = load_matroid(app, args)
    run = resolve_run_config(app, args, m.n)
    logger.info('matroid on [%d] of rank %d with %d bases', m.n, m.r, len(m.bases))
    payload = {
        **m.to_json(),
        'uniform': is_uniform(m),
        'exchange_edges': len(exchange_edges(m)),
    }
    emit(envelope(app, 'matroid', run, payload, m.r, m.n), run)
    return 0


def register(app) -> None:
    app.command('matroid')(cmd_matroid)
