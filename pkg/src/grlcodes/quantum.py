"""Quantum code parameters from Hermitian self-orthogonal codes.

A Hermitian self-orthogonal ``[n, k]`` code over GF(q^2) yields an
``[[n, n - 2k, d]]_q`` quantum code.  Distances carry an evidence tag:
``exact`` (enumeration), ``certified`` (a proven criterion) or
``lower-bound``.  A bound is never reported as an exact value.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .code import (
    InfeasibleError,
    LinearCode,
    dual_distance,
    hermitian_dual,
    is_hermitian_self_orthogonal,
    min_distance_exact,
    min_weight_outside,
)
from .families import FamilyParams, iter_params

__all__ = [
    "EVIDENCE_ORDER",
    "QuantumParams",
    "DefectReport",
    "KnownCode",
    "Table2Row",
    "singleton_defect_q",
    "css_from_hermitian_so",
    "qgrl_parameters",
    "load_known_codes",
    "load_table2_rows",
    "best_competitor",
    "table2_report",
    "report_to_csv",
    "report_to_json",
    "format_report",
]

log = logging.getLogger(__name__)

EVIDENCE_ORDER = ("exact", "certified", "lower-bound")


@dataclass(frozen=True)
class QuantumParams:
    """``[[n, kq, d]]_q`` with the evidence behind ``d``.

    Raises:
        ValueError: On ``kq`` outside ``0..n`` or an exact/certified distance
            violating ``n - kq >= 2(d - 1)``.
    """

    n: int
    kq: int
    d: int
    q: int
    evidence: str = "exact"

    def __post_init__(self):
        if self.evidence not in EVIDENCE_ORDER:
            raise ValueError(f"unknown evidence tag {self.evidence!r}")
        if not 0 <= self.kq <= self.n:
            raise ValueError(f"kq={self.kq} outside 0..{self.n}")
        if self.d < 1:
            raise ValueError("distance must be positive")
        if self.evidence != "lower-bound" and self.n - self.kq < 2 * (self.d - 1):
            raise ValueError(f"[[{self.n},{self.kq},{self.d}]] violates the quantum Singleton bound")

    @property
    def is_bound(self) -> bool:
        return self.evidence == "lower-bound"

    def __str__(self) -> str:
        d = f">={self.d}" if self.is_bound else str(self.d)
        return f"[[{self.n},{self.kq},{d}]]_{self.q}"

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.kq, "d": self.d, "q": self.q, "evidence": self.evidence}


@dataclass(frozen=True)
class DefectReport:
    """Quantum Singleton defect ``(n - kq)/2 + 1 - d`` as an exact fraction.

    For a lower-bound distance the defect is an upper bound.
    """

    defect: Fraction
    qnmds: bool
    is_upper_bound: bool = False

    @property
    def qmds(self) -> bool:
        return self.defect == 0 and not self.is_upper_bound

    def __str__(self) -> str:
        return _fmt_fraction(self.defect)


def _fmt_fraction(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return str(float(x))


def singleton_defect_q(p: QuantumParams) -> DefectReport:
    """Defect and QNMDS flag (``2d >= n - kq``) of a parameter set."""
    defect = Fraction(p.n - p.kq, 2) + 1 - p.d
    return DefectReport(defect, 2 * p.d >= p.n - p.kq, p.is_bound)


def css_from_hermitian_so(
    C: LinearCode,
    d_dual: int | None = None,
    *,
    d_dual_evidence: str = "exact",
    d: int | None = None,
    ext=None,
    budget: int | None = None,
) -> QuantumParams:
    """Quantum parameters of the code built from a Hermitian self-orthogonal ``C``.

    The quantum distance is the minimum weight of ``C^{perp h}`` outside
    ``C``.  When the dual distance is below ``d(C)`` this equals the dual
    distance; otherwise it is enumerated if the budget allows, and reported
    as a lower bound (the dual distance) if not.

    Args:
        C: The classical code over GF(q^2).
        d_dual: Distance of the Hermitian dual, if already known.  Computed
            by enumeration when omitted.
        d_dual_evidence: How ``d_dual`` was obtained.
        d: Distance of ``C`` if known; computed by enumeration if needed.
        ext: Optional quadratic-extension view of the field.
        budget: Enumeration budget.

    Raises:
        ValueError: If ``C`` is not Hermitian self-orthogonal.
        InfeasibleError: If ``d_dual`` is needed but cannot be enumerated.
    """
    if not is_hermitian_self_orthogonal(C, ext):
        raise ValueError("code is not Hermitian self-orthogonal")
    q = _base_order(C)
    n, k = C.n, C.k
    kq = n - 2 * k
    if d_dual is None:
        d_dual = dual_distance(C, budget)
        d_dual_evidence = "exact"
    if 2 * k == n:
        # self-dual: the quantum code has dimension zero
        return QuantumParams(n, 0, d_dual, q, d_dual_evidence)
    if d is None:
        try:
            d = min_distance_exact(C, budget)
        except InfeasibleError:
            d = None
    if d is not None and d_dual < d:
        return QuantumParams(n, kq, d_dual, q, d_dual_evidence)
    try:
        w = min_weight_outside(hermitian_dual(C, ext), C, budget)
        return QuantumParams(n, kq, w, q, "exact")
    except InfeasibleError:
        return QuantumParams(n, kq, d_dual, q, "lower-bound")


def _base_order(C: LinearCode) -> int:
    F = C.spec
    if F.m % 2:
        raise ValueError("code is not over a quadratic extension")
    return F.p ** (F.m // 2)


def qgrl_parameters(family: int, q: int, m: int, k: int) -> QuantumParams:
    """Closed-form quantum parameters of a family member.

    Families 1 and 2 give NMDS classical codes, so the Hermitian dual has
    distance exactly ``k`` (``certified``); families 3 and 4 only give the
    lower bound ``k - 1``.
    """
    p = FamilyParams(family, q, m, k)
    n = p.length
    if family in (1, 2):
        return QuantumParams(n, n - 2 * k, k, q, "certified")
    return QuantumParams(n, n - 2 * k, k - 1, q, "lower-bound")


# ----------------------------------------------------------------------
# comparison tables


@dataclass(frozen=True)
class KnownCode:
    """A published quantum code used for comparison."""

    params: QuantumParams
    source: str

    @property
    def defect(self) -> Fraction:
        return singleton_defect_q(self.params).defect


def _data_text(name: str) -> str:
    return resources.files("grlcodes").joinpath("data", name).read_text()


def _rows(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    return csv.DictReader(lines)


def load_known_codes(source: str | io.TextIOBase | None = None) -> list[KnownCode]:
    """Read ``n,k,d,d_is_bound,q,source`` rows; malformed rows are skipped with a warning.

    ``source`` is a path, an open text stream, or ``None`` for the bundled file.
    """
    if source is None:
        text = _data_text("known_qeccs.csv")
    elif hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    out = []
    for i, row in enumerate(_rows(text), start=2):
        try:
            bound = str(row.get("d_is_bound", "0")).strip().lower() in ("1", "true", "yes")
            qp = QuantumParams(
                int(row["n"]), int(row["k"]), int(row["d"]), int(row["q"]),
                "lower-bound" if bound else "exact",
            )
            out.append(KnownCode(qp, (row.get("source") or "").strip()))
        except (KeyError, TypeError, ValueError) as exc:
            warnings.warn(f"skipping malformed known-code row {i}: {exc}", stacklevel=2)
    return out


@dataclass(frozen=True)
class Table2Row:
    """One published row: the family cell and the printed values."""

    params: FamilyParams
    printed: QuantumParams
    printed_defect: Fraction
    printed_known: QuantumParams | None
    printed_known_defect: Fraction | None


def load_table2_rows() -> list[Table2Row]:
    """The bundled transcription of the published comparison table."""
    out = []
    for row in _rows(_data_text("table2_rows.csv")):
        fam, q = int(row["family"]), int(row["q"])
        fp = FamilyParams(fam, q, int(row["m"]), int(row["k"]))
        printed = QuantumParams(
            int(row["n"]), int(row["kq"]), int(row["d"]), q,
            "lower-bound" if row["d_is_bound"] == "1" else "certified",
        )
        known = None
        kd = None
        if row["known_n"]:
            known = QuantumParams(
                int(row["known_n"]), int(row["known_k"]), int(row["known_d"]), q,
                "lower-bound" if row["known_d_is_bound"] == "1" else "exact",
            )
            kd = Fraction(row["known_defect"])
        out.append(Table2Row(fp, printed, Fraction(row["defect"]), known, kd))
    return out


def best_competitor(ours: QuantumParams, known: Sequence[KnownCode]) -> KnownCode | None:
    """Comparable known code over the same ``q``.

    A code is comparable when it shares two of ``(n, k, d)``.  Sharing
    ``(n, k)`` is preferred over ``(n, d)``, which is preferred over
    ``(k, d)``; ties go to the smaller defect, then to file order.
    """
    for key in (("n", "kq"), ("n", "d"), ("kq", "d")):
        hits = [
            kc for kc in known
            if kc.params.q == ours.q
            and all(getattr(kc.params, a) == getattr(ours, a) for a in key)
        ]
        if hits:
            return min(hits, key=lambda kc: kc.defect)
    return None


@dataclass
class ReportRow:
    """One line of a comparison report."""

    params: FamilyParams
    ours: QuantumParams
    defect: DefectReport
    known: KnownCode | None
    delta: Fraction | None = None

    def to_dict(self) -> dict:
        d = {
            "family": self.params.family,
            "q": self.params.q,
            "m": self.params.m,
            "k": self.params.k,
            "code": str(self.ours),
            "n": self.ours.n,
            "kq": self.ours.kq,
            "d": self.ours.d,
            "evidence": self.ours.evidence,
            "defect": _fmt_fraction(self.defect.defect),
            "qnmds": self.defect.qnmds,
            "known": None,
            "known_defect": None,
            "known_source": None,
            "defect_delta": None,
        }
        if self.known is not None:
            d["known"] = str(self.known.params)
            d["known_defect"] = _fmt_fraction(self.known.defect)
            d["known_source"] = self.known.source
            d["defect_delta"] = _fmt_fraction(self.delta)
        return d


def table2_report(
    q_list: Iterable[int] | None = None,
    known_codes: Sequence[KnownCode] | None = None,
    *,
    families: Iterable[int] = (1, 2, 3, 4),
    cells: str = "published",
) -> list[ReportRow]:
    """Comparison rows for the selected ``q`` values and families.

    Args:
        q_list: Base field orders to include; ``None`` means all.
        known_codes: Comparison codes; ``None`` loads the bundled file, an
            empty list leaves the comparison columns blank.
        families: Families to include.
        cells: ``"published"`` for the cells of the published table,
            ``"all"`` for every in-range ``(family, q, m, k)``.
    """
    if known_codes is None:
        known_codes = load_known_codes()
    fams = set(families)
    qs = None if q_list is None else set(q_list)
    if cells == "published":
        params = [r.params for r in load_table2_rows()]
    elif cells == "all":
        if qs is None:
            raise ValueError("cells='all' needs an explicit q list")
        params = [p for q in sorted(qs) for f in sorted(fams) for p in iter_params(f, q)]
    else:
        raise ValueError(f"unknown cell selection {cells!r}")
    out = []
    for p in params:
        if p.family not in fams or (qs is not None and p.q not in qs):
            continue
        ours = qgrl_parameters(p.family, p.q, p.m, p.k)
        rep = singleton_defect_q(ours)
        comp = best_competitor(ours, known_codes)
        delta = None if comp is None else rep.defect - comp.defect
        out.append(ReportRow(p, ours, rep, comp, delta))
    return out


_CSV_FIELDS = [
    "family", "q", "m", "k", "code", "n", "kq", "d", "evidence", "defect", "qnmds",
    "known", "known_defect", "known_source", "defect_delta",
]


def report_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: ("" if v is None else v) for k, v in r.to_dict().items()})
    return buf.getvalue()


def report_to_json(rows: Sequence[ReportRow]) -> str:
    return json.dumps([r.to_dict() for r in rows], indent=2)


def format_report(rows: Sequence[ReportRow]) -> str:
    """Fixed-width human-readable table."""
    header = f"{'code':<22} {'S(Q)':>5} {'family':>6}  {'known':<22} {'S(Q)':>5}"
    lines = [header, "-" * len(header)]
    for r in rows:
        d = r.to_dict()
        lines.append(
            f"{d['code']:<22} {d['defect']:>5} {d['family']:>6}  "
            f"{(d['known'] or '--'):<22} {(d['known_defect'] or '--'):>5}"
        )
    return "\n".join(lines)
