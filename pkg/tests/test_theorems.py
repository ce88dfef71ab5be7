import pytest

from bachet.exceptions import BoundError
from bachet.models import (
    ClaimId,
    CurveCount,
    GroupStructure,
    NnInstance,
    ResidueClass,
    TorsionCensus,
    Verdict,
)
from bachet.services.theorems import (
    ClaimEvaluator,
    RowFacts,
    evaluate_claims,
    find_nn_instances,
    first_failures,
    report_passes,
    sweep,
)


@pytest.fixture(scope="module")
def small_sweep():
    return sweep(20, jobs=1)


def test_p7_qr_row():
    report = evaluate_claims(7, ResidueClass.QR)
    assert (report.a_rep, report.N, report.b, report.t) == (1, 12, -4, 4)
    assert (report.n, report.m, report.order3) == (2, 3, 2)
    assert report.verdicts[ClaimId.S1_sign_hypothesis] is Verdict.FAIL
    assert report.verdicts[ClaimId.T3b] is Verdict.PASS
    assert report.verdicts[ClaimId.T3a] is Verdict.NA
    assert report.verdicts[ClaimId.T7b] is Verdict.PASS
    assert report.verdicts[ClaimId.T7a] is Verdict.NA
    assert report.verdicts[ClaimId.C8_order3_by_t] is Verdict.PASS
    assert report.verdicts[ClaimId.T18_washington_refined] is Verdict.NA
    assert report.failed_claims() == []
    assert report.failed_claims(strict_s1=True) == [ClaimId.S1_sign_hypothesis]


def test_p7_nqr_row_is_two_by_two():
    report = evaluate_claims(7, ResidueClass.NQR)
    assert (report.a_rep, report.N, report.b) == (3, 4, 4)
    assert (report.n, report.m, report.order3) == (2, 1, 0)
    assert report.verdicts[ClaimId.T18_washington_refined] is Verdict.PASS
    assert report.verdicts[ClaimId.T17_washington_form] is Verdict.PASS
    assert report.verdicts[ClaimId.T9_count_in_2_8] is Verdict.NA
    assert report_passes(report)


def test_p13_nqr_breaks_congruence_only():
    report = evaluate_claims(13, ResidueClass.NQR)
    assert (report.N, report.b, report.n, report.m) == (16, -2, 4, 1)
    assert report.failed_claims() == [ClaimId.T18_washington_refined]
    assert report.verdicts[ClaimId.T17_washington_form] is Verdict.PASS


def test_cyclic_row():
    report = evaluate_claims(11, ResidueClass.ALL)
    assert (report.N, report.b, report.n, report.m) == (12, 0, 1, 12)
    assert report.verdicts[ClaimId.CYC_p5_cyclic] is Verdict.PASS
    assert report.verdicts[ClaimId.T2_twist_pairing] is Verdict.NA
    assert report.verdicts[ClaimId.CI_class_invariance] is Verdict.NA


@pytest.mark.parametrize("p, residue_class", [
    (7, ResidueClass.QR),
    (7, ResidueClass.NQR),
    (11, ResidueClass.ALL),
    (13, ResidueClass.QR),
])
def test_class_invariance(p, residue_class):
    report = evaluate_claims(p, residue_class, all_a=True)
    assert report.verdicts[ClaimId.CI_class_invariance] is Verdict.PASS


def test_class_invariance_respects_bound():
    report = evaluate_claims(13, ResidueClass.QR, all_a=True, all_a_bound=10)
    assert report.verdicts[ClaimId.CI_class_invariance] is Verdict.NA


def test_order3_by_t_outside_table():
    facts = RowFacts(
        p=13,
        residue_class=ResidueClass.QR,
        a_rep=1,
        count=CurveCount(p=13, N=10, b=4),
        structure=GroupStructure(n=1, nm=10),
        census=TorsionCensus(order3_count=0, full_3torsion=False),
    )
    assert ClaimEvaluator.order3_by_t(facts) is Verdict.FAIL


def test_sign_split_needs_both_members():
    facts = RowFacts(
        p=7,
        residue_class=ResidueClass.QR,
        a_rep=1,
        count=CurveCount(p=7, N=12, b=-4),
        structure=GroupStructure(n=2, nm=6),
        census=TorsionCensus(order3_count=2, full_3torsion=False),
        twist_count=CurveCount(p=7, N=12, b=-4),
    )
    assert ClaimEvaluator.t_mod6_is_4(facts) is Verdict.FAIL


def test_sweep_rows_ordered(small_sweep):
    assert [(r.p, r.residue_class.value) for r in small_sweep] == [
        (5, "ALL"), (7, "QR"), (7, "NQR"), (11, "ALL"),
        (13, "QR"), (13, "NQR"), (17, "ALL"), (19, "QR"), (19, "NQR"),
    ]


def test_sweep_first_failures(small_sweep):
    failures = first_failures(small_sweep)
    assert [(r.p, r.residue_class, claims) for r, claims in failures] == [
        (13, ResidueClass.NQR, [ClaimId.T18_washington_refined]),
    ]
    strict = first_failures(small_sweep, strict_s1=True, limit=1)
    assert len(strict) == 1
    assert strict[0][0].p == 7


def test_sweep_below_13_passes():
    assert all(report_passes(r) for r in sweep(12, jobs=1))


def test_sweep_class_filter():
    reports = sweep(20, ResidueClass.NQR, jobs=1)
    assert {r.residue_class for r in reports} == {ResidueClass.NQR}
    assert [r.p for r in reports] == [7, 13, 19]


def test_sweep_independent_of_jobs(small_sweep):
    assert sweep(20, jobs=2) == small_sweep


@pytest.mark.parametrize("bound", [4, 6])
def test_sweep_bound(bound):
    with pytest.raises(BoundError):
        sweep(bound)


def test_find_nn_instances():
    assert find_nn_instances(10, jobs=1) == [NnInstance(7, ResidueClass.NQR, 2, "n^2+n+1")]


def test_find_nn_instances_reuses_reports(small_sweep):
    instances = find_nn_instances(20, reports=small_sweep)
    assert [(i.p, i.n, i.satisfies_refinement) for i in instances] == [(7, 2, True), (13, 4, False)]


@pytest.mark.slow
def test_full_sweep_to_500():
    reports = sweep(500, jobs=2)
    failures = first_failures(reports, limit=len(reports))
    assert {c for _, claims in failures for c in claims} == {ClaimId.T18_washington_refined}
    assert [r.p for r, _ in failures] == [13, 73, 157, 241, 421]
    assert all(r.verdicts[ClaimId.T17_washington_form] is not Verdict.FAIL for r in reports)


@pytest.mark.slow
def test_full_sweep_with_all_a():
    reports = sweep(100, jobs=2, all_a=True, all_a_bound=100)
    assert all(r.verdicts[ClaimId.CI_class_invariance] is Verdict.PASS for r in reports)


def test_class_rows_are_twists(small_sweep):
    by_class = {(r.p, r.residue_class): r for r in small_sweep}
    for p in (7, 13, 19):
        qr, nqr = by_class[(p, ResidueClass.QR)], by_class[(p, ResidueClass.NQR)]
        assert qr.N + nqr.N == 2 * p + 2
        assert qr.t == nqr.t
        assert sorted([qr.b, nqr.b]) == [-qr.t, qr.t]


def test_nn_instances_match_rows(small_sweep):
    by_class = {(r.p, r.residue_class): r for r in small_sweep}
    for instance in find_nn_instances(20, reports=small_sweep):
        row = by_class[(instance.p, instance.residue_class)]
        assert instance.n * instance.n == row.N
        assert (instance.p - 1) % instance.n == 0
