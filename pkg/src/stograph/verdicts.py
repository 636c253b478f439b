"""Verdicts, certificates, and series judgments.

A Verdict is Complete / Incomplete / Unknown together with the certificate
that produced it (which theorem, with which witnesses) and caveat flags.
Certificates carry enough parameters to re-run the check deterministically
and may chain a sub-certificate (verdict propagation through surgeries).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Tuple


class Status(str, Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    UNKNOWN = "Unknown"


class Caveat(str, Enum):
    HORIZON_LIMITED = "HorizonLimited"
    HEURISTIC_SERIES = "HeuristicSeries"


class TheoremTag(str, Enum):
    OY_VIOLATION = "OY-violation"
    KHASMINSKII = "Khasminskii"
    PHI_KHASMINSKII = "PhiKhasminskii"
    SERIES = "Series"
    CURVATURE = "Curvature"
    KPLUS = "KPlus"
    INCOMPLETENESS_SERIES = "IncompletenessSeries"
    RATIO_CURVATURE = "RatioCurvature"
    WEAKLY_SYMMETRIC = "WeaklySymmetric"
    BOUNDED_GLOBAL_DEGREE = "BoundedGlobalDegree"
    STABILITY = "Stability"
    ORACLE_ELLIPTIC = "OracleElliptic"
    ORACLE_HEAT = "OracleHeat"


# Criteria that may only ever certify one side of the dichotomy.
COMPLETENESS_ONLY_TAGS = frozenset(
    {
        TheoremTag.KHASMINSKII,
        TheoremTag.PHI_KHASMINSKII,
        TheoremTag.SERIES,
        TheoremTag.CURVATURE,
        TheoremTag.KPLUS,
        TheoremTag.BOUNDED_GLOBAL_DEGREE,
    }
)
INCOMPLETENESS_ONLY_TAGS = frozenset(
    {
        TheoremTag.OY_VIOLATION,
        TheoremTag.INCOMPLETENESS_SERIES,
        TheoremTag.RATIO_CURVATURE,
    }
)


@dataclass(frozen=True)
class Certificate:
    tag: TheoremTag
    parameters: Mapping[str, Any]
    verified_region: str = ""
    chained: Optional["Certificate"] = None

    def chain_depth(self) -> int:
        d, c = 0, self.chained
        while c is not None:
            d += 1
            c = c.chained
            if d > 64:
                raise RuntimeError("certificate chain too deep (cycle?)")
        return d


@dataclass(frozen=True)
class Verdict:
    status: Status
    certificate: Optional[Certificate] = None
    caveats: Tuple[Caveat, ...] = ()
    detail: str = ""

    def __post_init__(self) -> None:
        if self.status is not Status.UNKNOWN and self.certificate is None:
            raise ValueError("non-Unknown verdicts must carry a certificate")

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __str__(self) -> str:
        parts = [self.status.value]
        if self.certificate is not None:
            parts.append(f"[{self.certificate.tag.value}]")
        if self.caveats:
            parts.append("(" + ", ".join(c.value for c in self.caveats) + ")")
        if self.detail:
            parts.append("- " + self.detail)
        return " ".join(parts)


def unknown(detail: str = "", caveats: Tuple[Caveat, ...] = ()) -> Verdict:
    return Verdict(Status.UNKNOWN, None, caveats, detail)


class SeriesStatus(str, Enum):
    DIVERGENT = "Divergent"
    CONVERGENT = "Convergent"
    INCONCLUSIVE = "Inconclusive"


class SeriesMethod(str, Enum):
    EXACT_TAIL = "ExactTail"
    PARTIAL_SUM_HEURISTIC = "PartialSumHeuristic"


@dataclass(frozen=True)
class SeriesJudgment:
    status: SeriesStatus
    method: SeriesMethod
    partial_sum: float
    terms_used: int

    def __post_init__(self) -> None:
        if self.method is SeriesMethod.PARTIAL_SUM_HEURISTIC and self.status is not SeriesStatus.INCONCLUSIVE:
            raise ValueError("partial sums alone cannot decide divergence")
