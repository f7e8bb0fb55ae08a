"""
lift / expand 서브커맨드

GKM 튜플을 Schubert 클래스로 전개(expand)하고, 그 전개를 행렬 공간의
동변 클래스로 들어 올립니다(lift). 출력에는 사용한 국소화 규약이 들어갑니다.
"""

import logging

from app.commands.common import (
    check_size,
    emit,
    envelope,
    load_matroid,
    parse_size,
    read_json_file,
    resolve_run_config,
)
from app.orbit.errors import ParseError
from app.orbit.localize import GKMTuple, full_orbit_tuple, gkm_check
from app.orbit.matroid import Matroid
from app.orbit.split import lift, resolve_convention, schubert_expand_tuple

logger = logging.getLogger(__name__)


def load_tuple(app, args) -> GKMTuple:
    """--uniform, tuple 문서, 또는 행렬/매트로이드 문서에서 GKM 튜플을 얻습니다."""
    if getattr(args, 'uniform', None):
        r, n = parse_size(args.uniform)
        check_size(app, n, args.force)
        return full_orbit_tuple(Matroid.uniform(r, n), app.config['WORKERS'])
    if not getattr(args, 'input', None):
        raise ParseError('an input file or --uniform R,N is required')
    document = read_json_file(args.input)
    if isinstance(document, dict) and 'tuple' in document:
        try:
            r, n = int(document['r']), int(document['n'])
            check_size(app, n, args.force)
            return GKMTuple.from_json(r, n, document['tuple'])
        except (KeyError, TypeError, ValueError) as error:
            raise ParseError(f'malformed tuple document: {error}') from error
    m = load_matroid(app, args)
    check_size(app, m.n, args.force)
    return full_orbit_tuple(m, app.config['WORKERS'])


def _expand(app, args):
    f = load_tuple(app, args)
    violations = gkm_check(f)
    if violations:
        logger.warning('input tuple violates the GKM condition at %d edges', len(violations))
    convention = resolve_convention(f.r, f.n)
    return f, schubert_expand_tuple(f, convention), convention


def cmd_expand(app, args) -> int:
    f, expansion, convention = _expand(app, args)
    run = resolve_run_config(app, args, f.n)
    payload = {'expansion': expansion.to_json(), 'rendered': expansion.render()}
    emit(envelope(app, 'expand', run, payload, f.r, f.n, convention.to_json()), run)
    return 0


def cmd_lift(app, args) -> int:
    f, expansion, convention = _expand(app, args)
    run = resolve_run_config(app, args, f.n)
    lifted = lift(expansion)
    payload = {
        'class': lifted.to_json(),
        'rendered': lifted.render(),
        'max_u_degree': lifted.max_u_degree(),
        'within_width_bound': lifted.within_width_bound(),
    }
    emit(envelope(app, 'lift', run, payload, f.r, f.n, convention.to_json()), run)
    return 0


def register(app) -> None:
    app.command('expand')(cmd_expand)
    app.command('lift')(cmd_lift)
