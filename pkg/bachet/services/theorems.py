"""
Проверка утверждений о кривых Баше перебором по простым.

Каждая строка отчёта считается один раз (N, b, t, n, m, order3 и данные кручения),
после чего предикаты только читают эти данные.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from bachet.config import settings
from bachet.exceptions import BoundError
from bachet.models import (
    ClaimId,
    ClassReport,
    CurveCount,
    GroupStructure,
    NnInstance,
    ResidueClass,
    TorsionCensus,
    Verdict,
)
from bachet.services.counting import (
    chi_sum_x3_plus_1,
    count_by_character_sum,
    residue_class_of_a,
    twist,
)
from bachet.services.curve import BachetCurve
from bachet.services.structure import count_order3, structure_of
from bachet.utils.field import FieldElement, Prime, cube_roots, primes_in_class, smallest_nonresidue
from bachet.utils.helpers import is_excluded_washington_form, washington_form

logger = logging.getLogger(__name__)
error_logger = logging.getLogger('bachet.errors')

CLASS_ORDER = {ResidueClass.QR: 0, ResidueClass.NQR: 1, ResidueClass.ALL: 2}

# (p mod 12, t mod 12) -> (N mod 12, есть ли точки порядка 3) для члена пары с b = +t
ORDER3_BY_T = {
    (1, 2): (0, True),
    (1, 10): (4, False),
    (7, 4): (4, False),
    (7, 8): (0, True),
}


@dataclass(frozen=True)
class RowFacts:
    """Всё, что предикаты знают о строке"""
    p: int
    residue_class: ResidueClass
    a_rep: int
    count: CurveCount
    structure: GroupStructure
    census: TorsionCensus
    twist_count: Optional[CurveCount] = None
    chi_sum: Optional[int] = None
    roots_of_minus_one: Optional[int] = None
    preimages_of_one: Optional[int] = None
    class_invariant: Optional[bool] = None

    @property
    def N(self) -> int:
        return self.count.N

    @property
    def b(self) -> int:
        return self.count.b

    @property
    def t(self) -> int:
        return self.count.t

    @property
    def is_cyclic_row(self) -> bool:
        return self.p % 6 == 5


def _verdict(condition: bool) -> Verdict:
    return Verdict.PASS if condition else Verdict.FAIL


class ClaimEvaluator:
    """Предикаты по одному на утверждение"""

    @staticmethod
    def twist_pairing(row: RowFacts) -> Verdict:
        return _verdict(row.twist_count.N == row.p + 1 + row.b)

    @staticmethod
    def b_mod12_iff_p1(row: RowFacts) -> Verdict:
        if row.p % 12 != 1:
            return Verdict.NA
        b12, n12 = row.b % 12, row.N % 12
        return _verdict((b12 == 2) == (n12 == 0) and (b12 == 10) == (n12 == 4))

    @staticmethod
    def b_mod12_iff_p7(row: RowFacts) -> Verdict:
        if row.p % 12 != 7:
            return Verdict.NA
        b12, n12 = row.b % 12, row.N % 12
        return _verdict((b12 == 4) == (n12 == 4) and (b12 == 8) == (n12 == 0))

    @staticmethod
    def six_not_dividing_b(row: RowFacts) -> Verdict:
        return _verdict(row.b % 6 in (2, 4))

    @staticmethod
    def N_mod6(row: RowFacts) -> Verdict:
        return _verdict(row.N % 6 in (0, 4))

    @staticmethod
    def b_mod12(row: RowFacts) -> Verdict:
        allowed = (2, 10) if row.p % 12 == 1 else (4, 8)
        return _verdict(row.b % 12 in allowed)

    @staticmethod
    def _sign_split(row: RowFacts, plus_N6: int, minus_N6: int) -> Verdict:
        members = [(row.b, row.N), (row.twist_count.b, row.twist_count.N)]
        plus = [N for b, N in members if b == row.t]
        minus = [N for b, N in members if b == -row.t]
        return _verdict(
            len(plus) == 1 and len(minus) == 1
            and plus[0] % 6 == plus_N6 and minus[0] % 6 == minus_N6
        )

    @staticmethod
    def t_mod6_is_2(row: RowFacts) -> Verdict:
        if row.t % 6 != 2:
            return Verdict.NA
        return ClaimEvaluator._sign_split(row, 0, 4)

    @staticmethod
    def t_mod6_is_4(row: RowFacts) -> Verdict:
        if row.t % 6 != 4:
            return Verdict.NA
        return ClaimEvaluator._sign_split(row, 4, 0)

    @staticmethod
    def order3_by_t(row: RowFacts) -> Verdict:
        key = (row.p % 12, row.t % 12)
        if key not in ORDER3_BY_T:
            logger.warning(f"⚠️ p={row.p}: пара (p mod 12, t mod 12) = {key} вне разбора случаев")
            return Verdict.FAIL
        N12, has_order3 = ORDER3_BY_T[key]
        if row.b != row.t:
            N12, has_order3 = (4 if N12 == 0 else 0), not has_order3
        return _verdict(row.N % 12 == N12 and (row.census.order3_count > 0) == has_order3)

    @staticmethod
    def order3_count_2_or_8(row: RowFacts) -> Verdict:
        if row.N % 6 != 0:
            return Verdict.NA
        return _verdict(row.census.order3_count in (2, 8))

    @staticmethod
    def unique_preimage_of_one(row: RowFacts) -> Verdict:
        return _verdict(row.preimages_of_one == 1)

    @staticmethod
    def three_roots_of_minus_one(row: RowFacts) -> Verdict:
        return _verdict(row.roots_of_minus_one == 3)

    @staticmethod
    def chi_sum_mod6(row: RowFacts) -> Verdict:
        return _verdict(row.chi_sum % 6 == 4)

    @staticmethod
    def qr_iff_N0(row: RowFacts) -> Verdict:
        return _verdict((row.residue_class is ResidueClass.QR) == (row.N % 6 == 0))

    @staticmethod
    def b_mod6_when_N0(row: RowFacts) -> Verdict:
        if row.N % 6 != 0:
            return Verdict.NA
        return _verdict(row.b % 6 == 2)

    @staticmethod
    def nqr_iff_N4(row: RowFacts) -> Verdict:
        return _verdict((row.residue_class is ResidueClass.NQR) == (row.N % 6 == 4))

    @staticmethod
    def order3_by_residue(row: RowFacts) -> Verdict:
        qr = row.residue_class is ResidueClass.QR
        count = row.census.order3_count
        return _verdict(qr == (count in (2, 8)) and (not qr) == (count == 0))

    @staticmethod
    def washington_refined(row: RowFacts) -> Verdict:
        if row.structure.m != 1:
            return Verdict.NA
        return _verdict(row.p % 12 == 7 and washington_form(row.p, row.structure.n) is not None)

    @staticmethod
    def washington_form_only(row: RowFacts) -> Verdict:
        if row.structure.m != 1:
            return Verdict.NA
        n = row.structure.n
        return _verdict(
            washington_form(row.p, n) is not None and not is_excluded_washington_form(row.p, n)
        )

    @staticmethod
    def sign_hypothesis(row: RowFacts) -> Verdict:
        return _verdict((row.b > 0) == (row.residue_class is ResidueClass.QR))

    @staticmethod
    def cyclic_supersingular(row: RowFacts) -> Verdict:
        s = row.structure
        return _verdict(s.n == 1 and s.nm == row.p + 1 and row.b == 0)

    @staticmethod
    def class_invariance(row: RowFacts) -> Verdict:
        if row.class_invariant is None:
            return Verdict.NA
        return _verdict(row.class_invariant)


CLAIMS: Dict[ClaimId, Callable[[RowFacts], Verdict]] = {
    ClaimId.T2_twist_pairing: ClaimEvaluator.twist_pairing,
    ClaimId.T3a: ClaimEvaluator.b_mod12_iff_p1,
    ClaimId.T3b: ClaimEvaluator.b_mod12_iff_p7,
    ClaimId.T4_six_ndiv_b: ClaimEvaluator.six_not_dividing_b,
    ClaimId.C5_N_mod6: ClaimEvaluator.N_mod6,
    ClaimId.C6_b_mod12: ClaimEvaluator.b_mod12,
    ClaimId.T7a: ClaimEvaluator.t_mod6_is_2,
    ClaimId.T7b: ClaimEvaluator.t_mod6_is_4,
    ClaimId.C8_order3_by_t: ClaimEvaluator.order3_by_t,
    ClaimId.T9_count_in_2_8: ClaimEvaluator.order3_count_2_or_8,
    ClaimId.C10_unique_preimage: ClaimEvaluator.unique_preimage_of_one,
    ClaimId.T11_three_roots: ClaimEvaluator.three_roots_of_minus_one,
    ClaimId.T12_chisum_mod6: ClaimEvaluator.chi_sum_mod6,
    ClaimId.T13_QR_iff_N0: ClaimEvaluator.qr_iff_N0,
    ClaimId.C14_b_mod6: ClaimEvaluator.b_mod6_when_N0,
    ClaimId.T15_NQR_iff_N4: ClaimEvaluator.nqr_iff_N4,
    ClaimId.C16_order3_by_residue: ClaimEvaluator.order3_by_residue,
    ClaimId.T18_washington_refined: ClaimEvaluator.washington_refined,
    ClaimId.S1_sign_hypothesis: ClaimEvaluator.sign_hypothesis,
    ClaimId.CYC_p5_cyclic: ClaimEvaluator.cyclic_supersingular,
    ClaimId.T17_washington_form: ClaimEvaluator.washington_form_only,
    ClaimId.CI_class_invariance: ClaimEvaluator.class_invariance,
}

CYCLIC_ROW_CLAIMS = (ClaimId.CYC_p5_cyclic, ClaimId.CI_class_invariance)


def _row_seed(seed: int, p: int, residue_class: ResidueClass) -> int:
    return seed * 1_000_003 + 4 * p + CLASS_ORDER[residue_class]


def _class_invariant(p: Prime, count: CurveCount, residue_class: ResidueClass,
                     twist_count: Optional[CurveCount]) -> bool:
    """N для каждого a ∈ F_p* совпадает с N представителя своего класса"""
    for a in range(1, p):
        E = BachetCurve.of(p, a)
        N = count_by_character_sum(E).N
        same_class = residue_class is ResidueClass.ALL or residue_class_of_a(E) is residue_class
        expected = count.N if same_class else twist_count.N
        if N != expected:
            error_logger.error(f"Нарушена инвариантность класса: p={p}, a={a}, N={N}, ожидалось {expected}")
            return False
    return True


def collect_facts(
    p: int,
    residue_class: ResidueClass,
    seed: Optional[int] = None,
    all_a: bool = False,
    all_a_bound: Optional[int] = None,
    sample_budget: Optional[int] = None,
) -> RowFacts:
    """Единственное место, где для строки считается арифметика"""
    p = p if isinstance(p, Prime) else Prime(p)
    seed = settings.default_seed if seed is None else seed
    all_a_bound = settings.all_a_bound if all_a_bound is None else all_a_bound

    if p % 6 == 1 and residue_class is ResidueClass.ALL:
        raise ValueError("Для p ≡ 1 (mod 6) нужен класс QR или NQR")
    a_rep = smallest_nonresidue(p).value if residue_class is ResidueClass.NQR else 1
    E = BachetCurve.of(p, a_rep)
    count = count_by_character_sum(E)
    structure = structure_of(
        E,
        seed=_row_seed(seed, p, residue_class),
        sample_budget=sample_budget,
        prefer_exhaustive=False,
    )
    census = count_order3(E, check=False)
    check_all_a = all_a and p <= all_a_bound

    if p % 6 == 5:
        return RowFacts(
            p=int(p),
            residue_class=residue_class,
            a_rep=a_rep,
            count=count,
            structure=structure,
            census=census,
            class_invariant=_class_invariant(p, count, ResidueClass.ALL, None) if check_all_a else None,
        )

    twist_count = twist(E, check=False).twist_count
    return RowFacts(
        p=int(p),
        residue_class=residue_class,
        a_rep=a_rep,
        count=count,
        structure=structure,
        census=census,
        twist_count=twist_count,
        chi_sum=chi_sum_x3_plus_1(p, check=False),
        roots_of_minus_one=len(cube_roots(FieldElement(-1, p))),
        preimages_of_one=len(cube_roots(FieldElement(0, p))),
        class_invariant=_class_invariant(p, count, residue_class, twist_count) if check_all_a else None,
    )


def judge(facts: RowFacts) -> ClassReport:
    """Вердикты по готовым данным строки"""
    verdicts: Dict[ClaimId, Verdict] = {}
    for claim, predicate in CLAIMS.items():
        applicable = (claim in CYCLIC_ROW_CLAIMS) if facts.is_cyclic_row else (claim is not ClaimId.CYC_p5_cyclic)
        verdicts[claim] = predicate(facts) if applicable else Verdict.NA

    report = ClassReport(
        p=facts.p,
        residue_class=facts.residue_class,
        a_rep=facts.a_rep,
        N=facts.N,
        b=facts.b,
        t=facts.t,
        n=facts.structure.n,
        m=facts.structure.m,
        order3=facts.census.order3_count,
        verdicts=verdicts,
    )
    for claim in report.failed_claims():
        error_logger.error(f"❌ {claim.value} не выполнено: p={facts.p}, класс {facts.residue_class.value}")
    return report


def evaluate_claims(
    p: int,
    residue_class: ResidueClass,
    seed: Optional[int] = None,
    all_a: bool = False,
    all_a_bound: Optional[int] = None,
    sample_budget: Optional[int] = None,
) -> ClassReport:
    return judge(collect_facts(p, residue_class, seed, all_a, all_a_bound, sample_budget))


def _classes_for(p: int, class_filter: Optional[ResidueClass]) -> List[ResidueClass]:
    if p % 6 == 5:
        return [] if class_filter is not None else [ResidueClass.ALL]
    if class_filter is not None:
        return [class_filter]
    return [ResidueClass.QR, ResidueClass.NQR]


def _evaluate_prime(p: int, classes: Sequence[ResidueClass], seed: Optional[int], all_a: bool,
                    all_a_bound: Optional[int], sample_budget: Optional[int]) -> List[ClassReport]:
    return [evaluate_claims(p, cls, seed, all_a, all_a_bound, sample_budget) for cls in classes]


def sweep(
    bound: int,
    class_filter: Optional[ResidueClass] = None,
    jobs: int = 1,
    seed: Optional[int] = None,
    all_a: bool = False,
    all_a_bound: Optional[int] = None,
    sample_budget: Optional[int] = None,
) -> List[ClassReport]:
    """Строки для всех простых 5 ≤ p ≤ bound, по возрастанию p, затем класса"""
    if bound < 7:
        raise BoundError(f"Граница {bound} меньше 7")
    if class_filter is ResidueClass.ALL:
        class_filter = None

    logger.info(f"🔄 Перебор простых до {bound} (процессов: {jobs})")
    tasks = [(int(p), _classes_for(p, class_filter)) for p in primes_in_class(bound, 1, 1)]
    tasks = [(p, classes) for p, classes in tasks if classes]

    reports: List[ClassReport] = []
    if jobs <= 1:
        for p, classes in tasks:
            reports.extend(_evaluate_prime(p, classes, seed, all_a, all_a_bound, sample_budget))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            futures = [
                executor.submit(_evaluate_prime, p, classes, seed, all_a, all_a_bound, sample_budget)
                for p, classes in tasks
            ]
            for future in futures:
                reports.extend(future.result())

    reports.sort(key=lambda r: (r.p, CLASS_ORDER[r.residue_class]))
    logger.info(f"✅ Получено {len(reports)} строк")
    return reports


def find_nn_instances(
    bound: int,
    jobs: int = 1,
    seed: Optional[int] = None,
    reports: Optional[List[ClassReport]] = None,
) -> List[NnInstance]:
    """Кривые с E(F_p) ≅ Z_n × Z_n среди строк перебора"""
    if reports is None:
        reports = sweep(bound, jobs=jobs, seed=seed)

    instances = [
        NnInstance(p=r.p, residue_class=r.residue_class, n=r.n, form=washington_form(r.p, r.n))
        for r in reports
        if r.residue_class is not ResidueClass.ALL and r.m == 1
    ]
    for instance in instances:
        if not instance.satisfies_refinement:
            error_logger.error(
                f"❌ Z_{instance.n} x Z_{instance.n} при p={instance.p}: "
                f"p mod 12 = {instance.p_mod_12}, вид {instance.form}"
            )
    return instances


def report_passes(report: ClassReport, strict_s1: bool = False) -> bool:
    return not report.failed_claims(strict_s1)


def first_failures(reports: Sequence[ClassReport], strict_s1: bool = False,
                   limit: int = 10) -> List[Tuple[ClassReport, List[ClaimId]]]:
    failures = []
    for report in reports:
        failed = report.failed_claims(strict_s1)
        if failed:
            failures.append((report, failed))
            if len(failures) >= limit:
                break
    return failures
