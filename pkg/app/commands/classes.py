"""
class / degree / klyachko 서브커맨드

균등 매트로이드 행렬 궤도 폐포의 닫힌 형태 클래스와 그 파생 수치를 출력합니다.
"""

import logging
from itertools import combinations

from app.commands.common import (
    check_size,
    emit,
    envelope,
    parse_partition,
    resolve_run_config,
)
from app.orbit.classes import (
    klyachko_terms,
    uniform_degree_terms,
    uniform_matrix_class_lr,
    uniform_matrix_class_omega,
    uniform_orbit_localized,
)
from app.orbit.errors import ParseError

logger = logging.getLogger(__name__)

FORM_LR = 'lr'
FORM_OMEGA = 'omega'
FORM_LOCALIZED = 'localized'


def cmd_class(app, args) -> int:
    r, n = args.r, args.n
    check_size(app, n, args.force)
    run = resolve_run_config(app, args, n)
    if args.form == FORM_LR:
        payload = {'form': FORM_LR, 'class': uniform_matrix_class_lr(r, n).to_json()}
    elif args.form == FORM_OMEGA:
        payload = {'form': FORM_OMEGA, 'class': uniform_matrix_class_omega(r, n).to_json()}
    elif args.form == FORM_LOCALIZED:
        entries = []
        for B in combinations(range(1, n + 1), r):
            value = uniform_orbit_localized(r, n, B, args.complement)
            entries.append({'basis': list(B), 'value': value.to_json(), 'rendered': str(value)})
        payload = {'form': FORM_LOCALIZED, 'complement': args.complement, 'tuple': entries}
    else:
        raise ParseError(f'unknown form: {args.form}')
    if 'class' in payload:
        logger.info('class (%d,%d) %s: %s', r, n, args.form, payload['class']['schur'])
    emit(envelope(app, 'class', run, payload, r, n), run)
    return 0


def cmd_degree(app, args) -> int:
    r, n = args.r, args.n
    run = resolve_run_config(app, args, n)
    terms = uniform_degree_terms(r, n)
    payload = {'degree': sum(term['term'] for term in terms), 'terms': terms}
    emit(envelope(app, 'degree', run, payload, r, n), run)
    return 0


def cmd_klyachko(app, args) -> int:
    lam = parse_partition(args.partition)
    r, n = args.r, args.n
    run = resolve_run_config(app, args, n)
    terms = klyachko_terms(lam, r, n, args.variant)
    payload = {
        'partition': lam.to_json(),
        'variant': args.variant,
        'coefficient': sum(term['term'] for term in terms),
        'terms': terms,
    }
    emit(envelope(app, 'klyachko', run, payload, r, n), run)
    return 0


def register(app) -> None:
    app.command('class')(cmd_class)
    app.command('degree')(cmd_degree)
    app.command('klyachko')(cmd_klyachko)
