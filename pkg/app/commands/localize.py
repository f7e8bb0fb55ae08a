"""
localize / tuple 서브커맨드

- localize: 한 고정점(--basis) 또는 전체(--all)의 Chow 국소화
- tuple: 전체 GKM 튜플과 gkm_check 위반 목록
"""

import logging
from itertools import combinations

from app.commands.common import (
    MODE_CERTIFY,
    emit,
    envelope,
    load_matroid,
    parse_basis,
    resolve_run_config,
)
from app.orbit.errors import ParseError
from app.orbit.localize import (
    full_orbit_tuple,
    gkm_check,
    orbit_chow_localization,
    orbit_chow_localization_value,
    orbit_codimension,
    orbit_k_localization,
)
from app.orbit.matroid import validate_subset
from app.utils.certify import failure_bound, random_points

logger = logging.getLogger(__name__)


def _certified_values(m, bases, run) -> dict:
    """certify 모드: 기호 정리 없이 무작위 점에서의 정확한 값"""
    points = random_points(m.n, 0, run.trials, run.seed)
    return {
        'points': [[str(v) for v in t_values] for t_values, _ in points],
        'values': [
            {'basis': list(B), 'values': [str(orbit_chow_localization_value(m, B, t)) for t, _ in points]}
            for B in bases
        ],
        'failure_probability_bound': failure_bound(orbit_codimension(m), run.trials),
    }


def cmd_localize(app, args) -> int:
    m = load_matroid(app, args)
    run = resolve_run_config(app, args, m.n)
    if args.basis:
        targets = [validate_subset(m, parse_basis(args.basis))]
    elif args.all:
        targets = list(combinations(range(1, m.n + 1), m.r))
    else:
        raise ParseError('localize needs --basis B or --all')

    if run.mode == MODE_CERTIFY:
        payload = _certified_values(m, targets, run)
    elif args.k_theory:
        payload = {'k_theory': [
            {'basis': list(B), 'value': str(orbit_k_localization(m, B))} for B in targets
        ]}
    elif args.basis:
        value = orbit_chow_localization(m, targets[0])
        payload = {'basis': list(targets[0]), 'value': value.to_json(), 'rendered': str(value)}
    else:
        payload = {'tuple': full_orbit_tuple(m, app.config['WORKERS']).to_json()}
    emit(envelope(app, 'localize', run, payload, m.r, m.n), run)
    return 0


def cmd_tuple(app, args) -> int:
    m = load_matroid(app, args)
    run = resolve_run_config(app, args, m.n)
    f = full_orbit_tuple(m, app.config['WORKERS'])
    violations = gkm_check(f)
    if violations:
        logger.error('orbit tuple fails the GKM condition at %d edges', len(violations))
    payload = {
        'codimension': orbit_codimension(m),
        'tuple': f.to_json(),
        'gkm_violations': violations,
    }
    emit(envelope(app, 'tuple', run, payload, m.r, m.n), run)
    return 1 if violations else 0


def register(app) -> None:
    app.command('localize')(cmd_localize)
    app.command('tuple')(cmd_tuple)
