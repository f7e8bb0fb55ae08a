"""
verify 서브커맨드

모듈 불변식을 묶은 검증 스위트를 실행하고 케이스별 통과/실패를 JSON 으로 보고합니다.
하나라도 실패하면 종료 코드 1 과 함께 첫 반례를 stderr 에 남깁니다.

스위트:
    lemma-vs-closed, lr-vs-omega, gkm, kms, cauchy, roundtrip,
    klyachko, degree, widthbound, matroid-invariance
"""

import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Optional

from app.commands.common import MODE_CERTIFY, RunConfig, emit, envelope, resolve_run_config, sizes_up_to
from app.orbit.classes import (
    COMPLEMENT_LITERAL,
    cauchy_sides,
    klyachko_coefficient,
    q_localization_sides,
    uniform_degree,
    uniform_degree_terms,
    uniform_matrix_class_lr,
    uniform_matrix_class_omega,
    uniform_orbit_localized,
    uniform_orbit_localized_value,
)
from app.orbit.errors import CodimMismatch, EXIT_VERIFICATION_FAILED, OrbitClassError
from app.orbit.exactpoly import Poly
from app.orbit.localize import (
    GKMTuple,
    full_orbit_tuple,
    gkm_check,
    gkm_edges,
    kms_chow_from_k,
    lemma_sum_raw,
    orbit_chow_localization,
    orbit_chow_localization_telescoped,
    orbit_chow_localization_telescoped_value,
    orbit_chow_localization_value,
    orbit_codimension,
    orbit_dimension,
    orbit_k_localization,
)
from app.orbit.matroid import Matroid, RationalMatrix, matroid_of_matrix
from app.orbit.split import (
    RestrictionConvention,
    factorial_expand,
    klyachko_oracle,
    lift,
    lift_orbit_class,
    reconstruct_tuple,
    resolve_convention,
    restrict_ambient,
    schubert_expand_tuple,
    tuple_of_ambient,
)
from app.orbit.symfunc import Partition, partitions_in_box, schur_principal, sst_enumerate
from app.utils.certify import certify_poly_equal, certify_values
from app.utils.verify_params import SUITES, VerifyParameterManager
from app.utils.verify_report import VerifyReport

logger = logging.getLogger(__name__)

# 서로 다른 유리수 행렬이 같은 매트로이드를 주는 묶음
INVARIANCE_GROUPS: Dict[str, List[List[List]]] = {
    'uniform(2,4)': [
        [[1, 1, 1, 1], [0, 1, 2, 3]],
        [[1, 0, 1, 1], [0, 1, 1, 2]],
        [[2, 1, 0, 5], [1, 3, 1, -1]],
    ],
    'uniform(2,5)': [
        [[1, 1, 1, 1, 1], [0, 1, 2, 3, 4]],
        [[1, 0, 1, 1, 1], [0, 1, 1, 2, 3]],
        [[1, 2, 3, 4, 5], [1, 3, 5, 7, 10]],
    ],
    'parallel-pairs': [
        [[1, 1, 0, 0], [0, 0, 1, 1]],
        [[2, -3, 0, 0], [0, 0, 5, Fraction(1, 2)]],
        [[1, 2, 1, 3], [1, 2, 2, 6]],
    ],
}

# 비균등 연결 계수 2 매트로이드 (kms, gkm)
NON_UNIFORM_RANK2 = [
    [[1, 1, 0, 1], [0, 0, 1, 1]],
    [[1, 1, 0, 1, 1], [0, 0, 1, 1, 2]],
    [[1, 1, 0, 0, 1], [0, 0, 1, 1, 1]],
]


@dataclass
class VerifyContext:
    app: object
    run: RunConfig
    params: dict
    max_n: Optional[int]

    def suite_params(self, suite: str) -> dict:
        return self.params['suites'][suite]

    def limit(self, suite: str) -> int:
        if self.max_n is not None:
            return self.max_n
        return self.suite_params(suite).get('max_n', self.app.config['EXACT_MAX_N'])

    def cases(self, suite: str) -> list:
        cases = self.suite_params(suite).get('cases', [])
        if self.max_n is None:
            return cases
        return [case for case in cases if case[-1] <= self.max_n]

    @property
    def certify(self) -> bool:
        return self.run.mode == MODE_CERTIFY


def _matroid(rows) -> Matroid:
    return matroid_of_matrix(RationalMatrix.of(rows))


def _name(r: int, n: int, basis=None) -> str:
    return f'({r},{n})' if basis is None else f'({r},{n}) B={list(basis)}'


def _record_identity(ctx: VerifyContext, report: VerifyReport, name: str, left, right, render: Callable[[], dict]) -> None:
    """다항식 항등식 한 건을 exact 또는 certify 로 기록"""
    if ctx.certify:
        result = certify_poly_equal(left, right, ctx.run.trials, ctx.run.seed, name)
        report.record_case(name, result.passed, result.to_dict())
        return
    passed = left == right
    report.record_case(name, passed, {'mode': 'exact'} if passed else render())


def _record_tuples(ctx: VerifyContext, report: VerifyReport, name: str, left: GKMTuple, right: GKMTuple) -> None:
    """두 튜플의 고정점별 일치를 exact 또는 certify 로 기록"""
    bases = sorted(left.values)
    if ctx.certify:
        result = certify_values(
            lambda point: tuple(left[B].evaluate(point[0]) for B in bases),
            lambda point: tuple(right[B].evaluate(point[0]) for B in bases),
            left.n, 0, max(left.degrees() + right.degrees() or [0]), ctx.run.trials, ctx.run.seed, name,
        )
        report.record_case(name, result.passed, result.to_dict())
        return
    mismatches = [list(B) for B in bases if left[B] != right[B]]
    report.record_case(name, not mismatches, {'mode': 'exact', 'mismatch_at': mismatches[:5]})


# ----------------------------------------------------------------------
# 스위트
# ----------------------------------------------------------------------
def suite_lemma_vs_closed(ctx: VerifyContext) -> VerifyReport:
    """순열 합 = 닫힌 형태 = 망원 형태 (균등 매트로이드의 모든 기저)"""
    report = VerifyReport('lemma-vs-closed')
    for r, n in sizes_up_to(ctx.limit('lemma-vs-closed')):
        m = Matroid.uniform(r, n)
        literal_mismatch = None
        for B in combinations(range(1, n + 1), r):
            if ctx.certify:
                for label, other in (
                    ('closed', lambda point: uniform_orbit_localized_value(r, n, B, point[0])),
                    ('telescoped', lambda point: orbit_chow_localization_telescoped_value(m, B, point[0])),
                ):
                    result = certify_values(
                        lambda point: orbit_chow_localization_value(m, B, point[0]), other,
                        n, 0, orbit_codimension(m), ctx.run.trials, ctx.run.seed, _name(r, n, B),
                    )
                    report.record_case(f'{_name(r, n, B)} {label}', result.passed, result.to_dict())
                continue
            summed = orbit_chow_localization(m, B)
            closed = uniform_orbit_localized(r, n, B)
            telescoped = orbit_chow_localization_telescoped(m, B)
            passed = summed == closed and summed == telescoped
            details = {'mode': 'exact'}
            if not passed:
                details.update({'permutation_sum': str(summed), 'closed': str(closed), 'telescoped': str(telescoped)})
            report.record_case(_name(r, n, B), passed, details)
            if literal_mismatch is None and uniform_orbit_localized(r, n, B, COMPLEMENT_LITERAL) != summed:
                literal_mismatch = B
        if literal_mismatch is not None:
            logger.warning('literal complement variant disagrees with the permutation sum at %s', _name(r, n, literal_mismatch))
            report.record_note(
                'literal complement variant disagrees with the permutation sum',
                {'r': r, 'n': n, 'basis': list(literal_mismatch)},
            )
        logger.info('lemma-vs-closed %s done', _name(r, n))
    return report


# s_ν(u, t) 의 u-측 전치를 확인하는 크기
Q_LOCALIZATION_SIZE = (2, 4)


def suite_lr_vs_omega(ctx: VerifyContext) -> VerifyReport:
    """두 행렬 공간 공식의 일치, 고정점 제한, s_ν(u, t) 의 u-측 전치"""
    report = VerifyReport('lr-vs-omega')
    for r, n in sizes_up_to(ctx.limit('lr-vs-omega')):
        lr = uniform_matrix_class_lr(r, n)
        omega = uniform_matrix_class_omega(r, n)
        convention = RestrictionConvention()
        _record_identity(
            ctx, report, f'{_name(r, n)} lr = omega', lr.value, omega.value,
            lambda: {'lr': lr.render(), 'omega': omega.render()},
        )
        m = Matroid.uniform(r, n)
        if ctx.certify:
            restricted = {B: restrict_ambient(lr, B, convention) for B in combinations(range(1, n + 1), r)}
            result = certify_values(
                lambda point: tuple(restricted[B].evaluate(point[0]) for B in restricted),
                lambda point: tuple(orbit_chow_localization_value(m, B, point[0]) for B in restricted),
                n, 0, orbit_codimension(m), ctx.run.trials, ctx.run.seed, _name(r, n),
            )
            report.record_case(f'{_name(r, n)} restriction', result.passed, result.to_dict())
            continue
        f = full_orbit_tuple(m, ctx.app.config['WORKERS'])
        restricted = tuple_of_ambient(lr, convention)
        mismatches = [list(B) for B, value in f.items() if restricted[B] != value]
        report.record_case(f'{_name(r, n)} restriction', not mismatches, {'mode': 'exact', 'mismatch_at': mismatches[:5]})

    r, n = Q_LOCALIZATION_SIZE
    if ctx.limit('lr-vs-omega') >= n:
        for nu in partitions_in_box(r, r):
            left, right = q_localization_sides(nu, r, n)
            _record_identity(
                ctx, report, f'{_name(r, n)} omega s{nu}(u,t)', left.evaluate(), right.evaluate(),
                lambda: {'omega_expanded': left.render(), 'lr_sum': right.render()},
            )
    return report


def _gkm_matroids(max_n: int) -> List[Matroid]:
    matroids = [Matroid.uniform(r, n) for r, n in sizes_up_to(max_n)]
    extra = NON_UNIFORM_RANK2 + INVARIANCE_GROUPS['parallel-pairs'][:1]
    matroids.extend(m for m in map(_matroid, extra) if m.n <= max_n)
    return matroids


def _gkm_residuals(f: GKMTuple, edges, t_values) -> tuple:
    """간선마다 f_B - f_{B'} 를 t_j = t_i 로 둔 점에서 평가"""
    residuals = []
    for basis, neighbor, i, j in edges:
        point = list(t_values)
        point[j - 1] = point[i - 1]
        residuals.append(f[basis].evaluate(point) - f[neighbor].evaluate(point))
    return tuple(residuals)


def _gkm_holds(ctx: VerifyContext, f: GKMTuple, name: str):
    """(성립 여부, 세부 정보)"""
    if not ctx.certify:
        violations = gkm_check(f)
        return not violations, {'mode': 'exact', 'violations': violations[:5]}
    edges = gkm_edges(f.r, f.n)
    zeros = tuple(0 for _ in edges)
    result = certify_values(
        lambda point: _gkm_residuals(f, edges, point[0]),
        lambda point: zeros,
        f.n, 0, max(f.degrees() or [0]), ctx.run.trials, ctx.run.seed, name,
    )
    return result.passed, result.to_dict()


def suite_gkm(ctx: VerifyContext) -> VerifyReport:
    """궤도 튜플의 GKM 조건과, 한 항목을 오염시켰을 때의 검출"""
    report = VerifyReport('gkm')
    corruptions = ctx.suite_params('gkm').get('corruptions', 3)
    for m in _gkm_matroids(ctx.limit('gkm')):
        name = f'{_name(m.r, m.n)} bases={len(m.bases)}'
        f = full_orbit_tuple(m, ctx.app.config['WORKERS'])
        holds, details = _gkm_holds(ctx, f, name)
        report.record_case(f'{name} valid', holds, details)
        rng = random.Random(ctx.run.seed)
        bases = [B for B, _ in f.items()]
        degree = (f.degrees() or [0])[0]
        for _ in range(corruptions):
            B = rng.choice(bases)
            # 같은 차수의 동차식을 더해 튜플 형식은 유지
            corrupted = f.with_value(B, f[B] + Poly.t(f.varspace, B[0]) ** degree)
            holds, details = _gkm_holds(ctx, corrupted, name)
            report.record_case(f'{name} corruption at {list(B)}', not holds, details)
    return report


def suite_kms(ctx: VerifyContext) -> VerifyReport:
    """K-이론 국소화 -> 최저차 성분 = Chow 국소화"""
    report = VerifyReport('kms')
    max_n = ctx.limit('kms')
    matroids = [Matroid.uniform(r, n) for r, n in sizes_up_to(max_n)]
    matroids.extend(m for m in map(_matroid, NON_UNIFORM_RANK2) if m.n <= max_n)
    for m in matroids:
        codim = orbit_codimension(m)
        for B in m.sorted_bases():
            name = f'{_name(m.r, m.n, B)} bases={len(m.bases)}'
            try:
                converted = kms_chow_from_k(orbit_k_localization(m, B), codim)
            except CodimMismatch as error:
                report.record_case(name, False, error.to_dict())
                continue
            if ctx.certify:
                result = certify_values(
                    lambda point: converted.evaluate(point[0]),
                    lambda point: orbit_chow_localization_value(m, B, point[0]),
                    m.n, 0, codim, ctx.run.trials, ctx.run.seed, name,
                )
                report.record_case(name, result.passed, result.to_dict())
                continue
            chow = orbit_chow_localization(m, B)
            passed = converted == chow
            report.record_case(name, passed, {'mode': 'exact'} if passed else {'chow': str(chow), 'from_k': str(converted)})
    return report


def suite_cauchy(ctx: VerifyContext) -> VerifyReport:
    report = VerifyReport('cauchy')
    max_size = ctx.suite_params('cauchy').get('max_size', 3)
    for size_t in range(1, max_size + 1):
        for size_v in range(1, max_size + 1):
            left, right = cauchy_sides(size_t, size_v)
            _record_identity(
                ctx, report, f'|T|={size_t} |V|={size_v}', left, right,
                lambda: {'product': str(left), 'schur_sum': str(right)},
            )
    return report


def suite_roundtrip(ctx: VerifyContext) -> VerifyReport:
    """lift(expand(full tuple)) 와 닫힌 형태 클래스 비교

    닫힌 형태가 u-차수 n-r 을 넘으면 두 클래스는 모든 고정점에서 0 인
    클래스만큼 다를 수 있으므로, 그때는 양쪽의 고정점 제한을 비교하고
    불일치를 note 로 남깁니다.
    """
    report = VerifyReport('roundtrip')
    for r, n in ctx.cases('roundtrip'):
        convention = resolve_convention(r, n)
        f = full_orbit_tuple(Matroid.uniform(r, n), ctx.app.config['WORKERS'])
        expansion = schubert_expand_tuple(f, convention)
        _record_tuples(ctx, report, f'{_name(r, n)} expansion reconstructs tuple', reconstruct_tuple(expansion, convention), f)
        lifted = lift(expansion)
        lr = uniform_matrix_class_lr(r, n)
        _record_tuples(ctx, report, f'{_name(r, n)} lift restricts to tuple', tuple_of_ambient(lifted, convention), f)
        if lr.within_width_bound():
            _record_identity(
                ctx, report, f'{_name(r, n)} lift = closed form', lifted.value, lr.value,
                lambda: {'lift': lifted.render(), 'closed': lr.render(), 'convention': convention.to_json()},
            )
        else:
            _record_tuples(ctx, report, f'{_name(r, n)} closed form restricts to tuple', tuple_of_ambient(lr, convention), f)
            logger.warning('closed form at %s exceeds the u-degree bound; compared by restriction', _name(r, n))
            report.record_note(
                'closed form exceeds the u-degree bound n-r; it differs from the lift by a class vanishing at every fixed point',
                {'r': r, 'n': n, 'closed_form_max_u_degree': lr.max_u_degree(), 'lift_max_u_degree': lifted.max_u_degree()},
            )
    return report


def suite_klyachko(ctx: VerifyContext) -> VerifyReport:
    """공식 그대로(i=1 부터), i=0 변형, 분할 사상 값을 나란히 보고

    정수 비교이므로 certify 모드에서도 정확히 계산합니다.
    """
    report = VerifyReport('klyachko')
    for parts, r, n in ctx.cases('klyachko'):
        lam = Partition.of(parts)
        literal = klyachko_coefficient(lam, r, n, 1)
        corrected = klyachko_coefficient(lam, r, n, 0)
        oracle = klyachko_oracle(lam, r, n)
        details = {'mode': 'exact', 'literal_variant': literal, 'corrected_variant': corrected, 'oracle': oracle}
        report.record_case(f'{lam} {_name(r, n)}', corrected == oracle, details)
        if literal != oracle:
            logger.warning('klyachko %s %s: sum from i=1 gives %d, splitting gives %d', lam, _name(r, n), literal, oracle)
            report.record_note('sum starting at i=1 disagrees with the splitting-derived coefficient', details)
    return report


KNOWN_DEGREES = {(2, 4): 4, (2, 5): 10}


def suite_degree(ctx: VerifyContext) -> VerifyReport:
    report = VerifyReport('degree')
    for r, n in sizes_up_to(ctx.limit('degree')):
        value = uniform_degree(r, n)
        expected = 1 if r == 1 else KNOWN_DEGREES.get((r, n))
        if expected is not None:
            report.record_case(
                f'{_name(r, n)} degree', value == expected, {'mode': 'exact', 'degree': value, 'expected': expected},
            )
        # hook-content 값과 반표준 타블로 개수 비교
        consistent = all(
            schur_principal(Partition.of(term[key]), r) == len(sst_enumerate(Partition.of(term[key]), r))
            for term in uniform_degree_terms(r, n)
            for key in ('partition', 'complement')
        )
        report.record_case(f'{_name(r, n)} principal specializations', consistent, {'mode': 'exact', 'degree': value})
    return report


def suite_widthbound(ctx: VerifyContext) -> VerifyReport:
    """u-차수 상한은 구조적 성질이라 두 모드 모두 정확히 확인"""
    report = VerifyReport('widthbound')
    for r, n in ctx.cases('widthbound'):
        lifted = lift_orbit_class(Matroid.uniform(r, n), ctx.app.config['WORKERS'])
        overflow = factorial_expand(lifted, resolve_convention(r, n).eps_t).has_overflow()
        passed = lifted.within_width_bound() and not overflow
        report.record_case(
            _name(r, n), passed, {'mode': 'exact', 'max_u_degree': lifted.max_u_degree(), 'overflow': overflow},
        )
        lr = uniform_matrix_class_lr(r, n)
        if not lr.within_width_bound():
            report.record_note(
                'closed form exceeds the u-degree bound',
                {'r': r, 'n': n, 'max_u_degree': lr.max_u_degree(), 'bound': n - r},
            )
    return report


def suite_matroid_invariance(ctx: VerifyContext) -> VerifyReport:
    """같은 매트로이드를 주는 서로 다른 행렬 -> 같은 튜플, 같은 lift"""
    report = VerifyReport('matroid-invariance')
    for label, matrices in INVARIANCE_GROUPS.items():
        matroids = [_matroid(rows) for rows in matrices]
        report.record_case(f'{label} matroids', len(set(matroids)) == 1, None)
        tuples = [full_orbit_tuple(m, ctx.app.config['WORKERS']) for m in matroids]
        for index, f in enumerate(tuples[1:], start=1):
            _record_tuples(ctx, report, f'{label} tuple {index} = tuple 0', f, tuples[0])
        first = matroids[0]
        convention = resolve_convention(first.r, first.n)
        lifted = [lift(schubert_expand_tuple(f, convention)).value for f in tuples]
        for index, c in enumerate(lifted[1:], start=1):
            _record_identity(
                ctx, report, f'{label} lifted class {index} = lifted class 0', c, lifted[0],
                lambda: {'lifted': str(c), 'first': str(lifted[0])},
            )
        if orbit_dimension(first) < first.n - 1:
            raw = lemma_sum_raw(first, first.sorted_bases()[0])
            report.record_note(
                f'{label} is a direct sum; the undecomposed permutation sum is {"zero" if raw.is_zero() else raw}',
                {'blocks_dimension': orbit_dimension(first)},
            )
    return report


SUITE_RUNNERS: Dict[str, Callable[[VerifyContext], VerifyReport]] = {
    'lemma-vs-closed': suite_lemma_vs_closed,
    'lr-vs-omega': suite_lr_vs_omega,
    'gkm': suite_gkm,
    'kms': suite_kms,
    'cauchy': suite_cauchy,
    'roundtrip': suite_roundtrip,
    'klyachko': suite_klyachko,
    'degree': suite_degree,
    'widthbound': suite_widthbound,
    'matroid-invariance': suite_matroid_invariance,
}


def run_suites(ctx: VerifyContext, names: List[str]) -> List[VerifyReport]:
    reports = []
    for name in names:
        logger.info('verify suite %s (mode=%s)', name, ctx.run.mode)
        try:
            report = SUITE_RUNNERS[name](ctx)
        except OrbitClassError as error:
            report = VerifyReport(name)
            report.record_case('suite raised', False, error.to_dict())
        report.finish()
        if not report.passed:
            logger.error('suite %s failed: %s', name, report.first_failure)
        reports.append(report)
    return reports


def cmd_verify(app, args) -> int:
    names = list(SUITES) if args.suite == 'all' else [args.suite]
    manager = VerifyParameterManager(app.config['VERIFY_PARAMS_FILE'])
    params = manager.load()
    certify_defaults = params['certify']
    resolved = resolve_run_config(app, args, args.max_n or app.config['EXACT_MAX_N'])
    run = RunConfig(
        mode=resolved.mode,
        trials=args.trials or certify_defaults['trials'],
        seed=certify_defaults['seed'] if args.seed is None else args.seed,
        output=resolved.output,
    )
    ctx = VerifyContext(app, run, params, args.max_n)
    reports = run_suites(ctx, names)
    passed = all(report.passed for report in reports)
    first = next((report.first_failure for report in reports if not report.passed), None)
    payload = {
        'suites': [report.get_overview() for report in reports],
        'passed': passed,
        'first_counterexample': first,
    }
    emit(envelope(app, 'verify', run, payload), run)
    if not passed:
        print(json.dumps({'first_counterexample': first}, ensure_ascii=False), file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    return 0


def register(app) -> None:
    app.command('verify')(cmd_verify)
