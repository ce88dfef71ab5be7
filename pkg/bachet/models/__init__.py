from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import TYPE_CHECKING, Any, Dict, List, Optional

if TYPE_CHECKING:
    from bachet.services.curve import BachetCurve
    from bachet.utils.field import FieldElement


class ResidueClass(str, Enum):
    """Класс коэффициента a: квадратичный вычет, невычет или все a сразу (p ≡ 5 mod 6)"""
    QR = "QR"
    NQR = "NQR"
    ALL = "ALL"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NA = "na"


class ExitCode(IntEnum):
    OK = 0
    CLAIM_VIOLATION = 1
    USAGE_ERROR = 2
    UNVERIFIED = 3


class OutputFormat(str, Enum):
    TABLE = "table"
    CSV = "csv"
    JSONL = "jsonl"
    XLSX = "xlsx"


class ClaimId(str, Enum):
    """Проверяемые утверждения; порядок задаёт порядок колонок отчёта"""
    T2_twist_pairing = "T2_twist_pairing"
    T3a = "T3a"
    T3b = "T3b"
    T4_six_ndiv_b = "T4_six_ndiv_b"
    C5_N_mod6 = "C5_N_mod6"
    C6_b_mod12 = "C6_b_mod12"
    T7a = "T7a"
    T7b = "T7b"
    C8_order3_by_t = "C8_order3_by_t"
    T9_count_in_2_8 = "T9_count_in_2_8"
    C10_unique_preimage = "C10_unique_preimage"
    T11_three_roots = "T11_three_roots"
    T12_chisum_mod6 = "T12_chisum_mod6"
    T13_QR_iff_N0 = "T13_QR_iff_N0"
    C14_b_mod6 = "C14_b_mod6"
    T15_NQR_iff_N4 = "T15_NQR_iff_N4"
    C16_order3_by_residue = "C16_order3_by_residue"
    T18_washington_refined = "T18_washington_refined"
    S1_sign_hypothesis = "S1_sign_hypothesis"
    CYC_p5_cyclic = "CYC_p5_cyclic"
    T17_washington_form = "T17_washington_form"
    CI_class_invariance = "CI_class_invariance"

    @property
    def is_hypothesis(self) -> bool:
        """Гипотеза: провал допускается и не влияет на код выхода без --strict-s1"""
        return self is ClaimId.S1_sign_hypothesis


@dataclass(frozen=True)
class CurveCount:
    """Число точек N, след Фробениуса b = p+1−N и t = |b|"""
    p: int
    N: int
    b: int

    @property
    def t(self) -> int:
        return abs(self.b)

    @property
    def hasse_bound_ok(self) -> bool:
        # |b| ≤ 2√p без плавающей точки
        return self.b * self.b <= 4 * self.p


@dataclass(frozen=True)
class TwistPair:
    """Кривая и её квадратичное кручение y² = x³ + (ga)³"""
    original: "BachetCurve"
    original_count: CurveCount
    twist: "BachetCurve"
    twist_count: CurveCount
    g: "FieldElement"


@dataclass(frozen=True)
class GroupStructure:
    """E(F_p) ≅ C_n × C_nm"""
    n: int
    nm: int
    method: str = "exhaustive"
    verified: bool = True
    samples: int = 0

    @property
    def m(self) -> int:
        return self.nm // self.n

    @property
    def order(self) -> int:
        return self.n * self.nm

    @property
    def is_cyclic(self) -> bool:
        return self.n == 1

    def describe(self) -> str:
        if self.is_cyclic:
            return f"C_{self.nm}"
        return f"C_{self.n} x C_{self.nm}"


@dataclass(frozen=True)
class TorsionCensus:
    order3_count: int
    full_3torsion: bool


@dataclass
class ClassReport:
    """Строка отчёта: один класс (p, QR/NQR) и вердикты по всем утверждениям"""
    p: int
    residue_class: ResidueClass
    a_rep: int
    N: int
    b: int
    t: int
    n: int
    m: int
    order3: int
    verdicts: Dict[ClaimId, Verdict] = field(default_factory=dict)

    def failed_claims(self, strict_s1: bool = False) -> List[ClaimId]:
        return [
            claim for claim, verdict in self.verdicts.items()
            if verdict is Verdict.FAIL and (strict_s1 or not claim.is_hypothesis)
        ]

    def to_row(self) -> Dict[str, Any]:
        """Плоский словарь в фиксированном порядке колонок CSV"""
        row: Dict[str, Any] = {
            'p': self.p,
            'class': self.residue_class.value,
            'a_rep': self.a_rep,
            'N': self.N,
            'b': self.b,
            't': self.t,
            'n': self.n,
            'm': self.m,
            'order3': self.order3,
        }
        for claim in ClaimId:
            row[claim.value] = self.verdicts.get(claim, Verdict.NA).value
        return row

    def to_json_row(self) -> Dict[str, Any]:
        """Те же ключи, вердикты вложены под "verdicts" """
        row = self.to_row()
        verdicts = {claim.value: row.pop(claim.value) for claim in ClaimId}
        row['verdicts'] = verdicts
        return row

    @classmethod
    def from_row(cls, row: Dict[str, Any]) -> "ClassReport":
        """Обратное преобразование; принимает и плоскую, и вложенную (JSONL) форму"""
        nested = row.get('verdicts')
        raw_verdicts = nested if isinstance(nested, dict) else row
        verdicts = {
            claim: Verdict(str(raw_verdicts[claim.value]))
            for claim in ClaimId
            if claim.value in raw_verdicts
        }
        return cls(
            p=int(row['p']),
            residue_class=ResidueClass(str(row['class'])),
            a_rep=int(row['a_rep']),
            N=int(row['N']),
            b=int(row['b']),
            t=int(row['t']),
            n=int(row['n']),
            m=int(row['m']),
            order3=int(row['order3']),
            verdicts=verdicts,
        )


@dataclass(frozen=True)
class NnInstance:
    """Кривая с E(F_p) ≅ Z_n × Z_n"""
    p: int
    residue_class: ResidueClass
    n: int
    form: Optional[str]

    @property
    def p_mod_12(self) -> int:
        return self.p % 12

    @property
    def satisfies_refinement(self) -> bool:
        return self.p_mod_12 == 7 and self.form is not None

    def to_row(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'class': self.residue_class.value,
            'n': self.n,
            'form': self.form or "none",
            'p_mod_12': self.p_mod_12,
            'holds': "pass" if self.satisfies_refinement else "fail",
        }
