"""Executable checks of structural results on double homology.

Each check returns a :class:`VerificationReport`. A check whose
preconditions do not hold is ``skipped`` with a machine-readable reason;
a failing check always carries a witness.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Any, Iterable, Mapping, Sequence

from . import vertexset as vs
from .bigraded import (
    BigradedTable,
    compute_double_homology,
    hochster_table,
    hh_table,
    join_convolution,
)
from .complex import SimplicialComplex, add_face, degree, join, remove_facet
from .linalg import FieldSpec
from .predicates import (
    induced_cycles,
    is_p_neighborly,
    is_primitive_sphere,
    is_simplex_boundary,
    is_sphere_proxy,
    is_wedge_decomposable_along,
)
from .vertexset import VertexSet

logger = logging.getLogger(__name__)


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass
class VerificationReport:
    check: str
    complex_hash: str
    field: str
    status: Status
    reason: str | None = None
    witness: list[dict[str, Any]] = dc_field(default_factory=list)
    details: dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and not self.witness:
            raise ValueError(f"{self.check}: a failing report needs a witness")

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "check": self.check,
            "complex_hash": self.complex_hash,
            "field": self.field,
            "status": self.status.value,
        }
        if self.reason:
            out["reason"] = self.reason
        if self.witness:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def _report(check: str, K: SimplicialComplex, field: FieldSpec, status: Status, **kw) -> VerificationReport:
    return VerificationReport(check=check, complex_hash=K.hash, field=field.label, status=status, **kw)


def _skip(check: str, K: SimplicialComplex, field: FieldSpec, reason: str) -> VerificationReport:
    return _report(check, K, field, Status.SKIPPED, reason=reason)


def _verdict(witness: list[dict[str, Any]]) -> Status:
    return Status.FAIL if witness else Status.PASS


def table_diff(
    expected: Mapping[tuple[int, int], int], actual: Mapping[tuple[int, int], int]
) -> list[dict[str, Any]]:
    """Bidegrees where two ``(k, 2l)`` tables disagree."""
    out = []
    for key in sorted(set(expected) | set(actual), key=lambda b: (b[1], b[0])):
        e, a = expected.get(key, 0), actual.get(key, 0)
        if e != a:
            out.append({"bidegree": [key[0], key[1]], "expected": e, "actual": a})
    return out


def _hh(K: SimplicialComplex, field: FieldSpec, table: BigradedTable | None, options: Mapping[str, Any]) -> BigradedTable:
    return table if table is not None else hh_table(K, field, **options)


# -- sphere checks -----------------------------------------------------------


def check_duality(
    K: SimplicialComplex, field: FieldSpec, *, table: BigradedTable | None = None, **options
) -> VerificationReport:
    """Entry ``(k, 2l)`` of an ``n``-sphere on ``[m]`` equals entry ``(n - k + 1 - m, 2m - 2l)``."""
    ok, n = is_sphere_proxy(K)
    if not ok:
        return _skip("duality", K, field, "not-a-sphere")
    T = _hh(K, field, table, options)
    m = K.m
    mirrored = {(n - k + 1 - m, 2 * m - two_l): d for (k, two_l), d in T.entries.items()}
    witness = table_diff(mirrored, T.entries)
    return _report("duality", K, field, _verdict(witness), witness=witness)


def theorem_a_table(n: int, m: int) -> dict[tuple[int, int], int]:
    """HH of a non-primitive ``n``-sphere on ``[m]``; coinciding bidegrees merge."""
    out: Counter[tuple[int, int]] = Counter()
    for j, l in ((0, 0), (1, 2), (n, m - 2), (n + 1, m)):
        out[(j - l, 2 * l)] += 1
    return dict(out)


def check_theorem_A(
    K: SimplicialComplex, field: FieldSpec, *, table: BigradedTable | None = None, **options
) -> VerificationReport:
    ok, n = is_sphere_proxy(K)
    if not ok:
        return _skip("theorem-a", K, field, "not-a-sphere")
    if is_primitive_sphere(K):
        return _skip("theorem-a", K, field, "primitive")
    T = _hh(K, field, table, options)
    witness = table_diff(theorem_a_table(n, K.m), T.entries)
    return _report("theorem-a", K, field, _verdict(witness), witness=witness)


@dataclass(frozen=True)
class FacetRemoval:
    facet: VertexSet
    rank_before: int
    rank_after: int
    has_non_neighbor: bool

    @property
    def delta(self) -> int:
        return self.rank_after - self.rank_before

    def to_dict(self) -> dict[str, Any]:
        return {
            "facet": list(vs.to_vertices(self.facet)),
            "rank_before": self.rank_before,
            "rank_after": self.rank_after,
            "delta": self.delta,
            "has_non_neighbor": self.has_non_neighbor,
        }


@dataclass
class FacetRemovalScan:
    entries: list[FacetRemoval]
    report: VerificationReport


def facet_removal_scan(
    K: SimplicialComplex, field: FieldSpec, *, table: BigradedTable | None = None, **options
) -> FacetRemovalScan:
    """Rank change of ``HH`` when each facet of a sphere is deleted.

    Neighborly spheres keep their rank for every facet; non-neighborly ones
    lose exactly 2 for at least one facet. Whether a drop coincides with the
    facet containing a vertex that misses some other vertex is recorded in
    ``details`` without being asserted.
    """
    ok, n = is_sphere_proxy(K)
    if not ok:
        return FacetRemovalScan([], _skip("facet-removal", K, field, "not-a-sphere"))
    if n < 1:
        return FacetRemovalScan([], _skip("facet-removal", K, field, "dimension-0"))
    before = _hh(K, field, table, options).total_rank
    lonely = vs.from_vertices(v for v in vs.to_vertices(K.vertex_mask) if degree(K, v) < K.m - 1)
    entries = []
    for sigma in K.facets:
        after = hh_table(remove_facet(K, sigma), field, **options).total_rank
        entries.append(FacetRemoval(sigma, before, after, bool(sigma & lonely)))

    neighborly = is_p_neighborly(K, 1)
    witness: list[dict[str, Any]] = []
    for e in entries:
        if e.delta not in (0, -2):
            logger.warning("facet {%s}: rank delta %d outside {0, -2}", vs.format_vertices(e.facet), e.delta)
            witness.append({"facet": list(vs.to_vertices(e.facet)), "expected": "0 or -2", "actual": e.delta})
        elif neighborly and e.delta:
            witness.append({"facet": list(vs.to_vertices(e.facet)), "expected": 0, "actual": e.delta})
    if not neighborly and not any(e.delta == -2 for e in entries):
        witness.append({"facet": None, "expected": "some delta -2", "actual": sorted({e.delta for e in entries})})

    agree = sum((e.delta == -2) == e.has_non_neighbor for e in entries)
    details = {
        "neighborly": neighborly,
        "rank": before,
        "deltas": dict(sorted(Counter(e.delta for e in entries).items())),
        "drop_matches_non_neighbor": f"{agree}/{len(entries)}",
        "facets": [e.to_dict() for e in entries],
    }
    report = _report("facet-removal", K, field, _verdict(witness), witness=witness, details=details)
    return FacetRemovalScan(entries, report)


def check_neighborliness_criterion(
    K: SimplicialComplex, field: FieldSpec, *, table: BigradedTable | None = None, **options
) -> VerificationReport:
    """For ``K`` ``(p-1)``-neighborly: ``p``-neighborly iff ``HH_{-1,2p+2} = 0``."""
    T = _hh(K, field, table, options)
    witness = []
    checked = []
    p = 1
    while p < K.m and is_p_neighborly(K, p - 1):
        neighborly = is_p_neighborly(K, p)
        vanishes = T.dim(-1, 2 * p + 2) == 0
        checked.append(p)
        if neighborly != vanishes:
            witness.append({
                "p": p,
                "bidegree": [-1, 2 * p + 2],
                "expected": "0" if neighborly else "nonzero",
                "actual": T.dim(-1, 2 * p + 2),
            })
        if not neighborly:
            break
        p += 1
    if not checked:
        return _skip("neighborliness", K, field, "not-0-neighborly")
    return _report("neighborliness", K, field, _verdict(witness), witness=witness, details={"orders": checked})


def check_rank2_characterization(
    K: SimplicialComplex, field: FieldSpec, *, table: BigradedTable | None = None, **options
) -> VerificationReport:
    ok, _ = is_sphere_proxy(K)
    if not ok:
        return _skip("rank2", K, field, "not-a-sphere")
    total = _hh(K, field, table, options).total_rank
    boundary = is_simplex_boundary(K)
    witness = []
    if (total == 2) != boundary:
        witness.append({"rank": total, "simplex_boundary": boundary})
    return _report("rank2", K, field, _verdict(witness), witness=witness, details={"rank": total})


# -- structural checks ---------------------------------------------------------


def check_join_formula(
    K1: SimplicialComplex, K2: SimplicialComplex, field: FieldSpec, **options
) -> VerificationReport:
    """``HH(K1 * K2)`` equals the bigraded product of ``HH(K1)`` and ``HH(K2)``."""
    J = join(K1, K2)
    expected = join_convolution(hh_table(K1, field, **options), hh_table(K2, field, **options))
    witness = table_diff(expected, hh_table(J, field, **options).entries)
    return _report("join", J, field, _verdict(witness), witness=witness)


def check_skeleton_agreement(
    K: SimplicialComplex, S: VertexSet, field: FieldSpec, **options
) -> VerificationReport:
    """Adding ``S`` leaves ``HH_j`` unchanged for ``j <= |S| - 2``."""
    L = add_face(K, S)
    top = S.bit_count() - 2
    before = {b: d for b, d in hh_table(K, field, **options).as_jl().items() if b[0] <= top}
    after = {b: d for b, d in hh_table(L, field, **options).as_jl().items() if b[0] <= top}
    witness = [
        {"j": j, "l": l, "expected": before.get((j, l), 0), "actual": after.get((j, l), 0)}
        for (j, l) in sorted(set(before) | set(after))
        if before.get((j, l), 0) != after.get((j, l), 0)
    ]
    return _report(
        "skeleton", K, field, _verdict(witness), witness=witness,
        details={"added": list(vs.to_vertices(S)), "strata": top},
    )


def check_wedge_concentration(
    K: SimplicialComplex, sigma: VertexSet, field: FieldSpec, **options
) -> VerificationReport:
    """A wedge-decomposable complex has ``HH`` = F at (0,0) and at (-1,4)."""
    if not is_wedge_decomposable_along(K, sigma):
        return _skip("wedge", K, field, "not-wedge-decomposable")
    witness = table_diff({(0, 0): 1, (-1, 4): 1}, hh_table(K, field, **options).entries)
    return _report("wedge", K, field, _verdict(witness), witness=witness)


def check_cochain(K: SimplicialComplex, field: FieldSpec, **options) -> VerificationReport:
    """``d∘d = 0`` on every stratum and Euler characteristics of CH and HH agree."""
    options = {**options, "check_cochain": True}
    result = compute_double_homology(K, field, **options)
    hh = result.hh.as_jl()
    witness = []
    for j, dims in sorted(result.ch_dims.items()):
        chi_ch = sum((-1) ** l * d for l, d in dims.items())
        chi_hh = sum((-1) ** l * d for (jj, l), d in hh.items() if jj == j)
        if chi_ch != chi_hh:
            witness.append({"j": j, "expected": chi_ch, "actual": chi_hh})
    return _report("cochain", K, field, _verdict(witness), witness=witness)


DEFAULT_FIELDS = ("gf2", "gfp:3", "gfp:5", "q")


def check_field_agreement(
    K: SimplicialComplex, fields: Sequence[FieldSpec] | None = None, **options
) -> VerificationReport:
    """Hochster tables over several fields; disagreement signals torsion."""
    fields = list(fields) if fields else [FieldSpec.parse(f) for f in DEFAULT_FIELDS]
    reference = hochster_table(K, fields[0], **options)
    witness = []
    for f in fields[1:]:
        for w in table_diff(reference.entries, hochster_table(K, f, **options).entries):
            w["field"] = f.label
            witness.append(w)
    if witness:
        logger.warning("Hochster tables disagree across fields for %s: torsion in integral homology", K.hash[:12])
    return _report(
        "fields", K, fields[0], _verdict(witness), witness=witness,
        details={"fields": [f.label for f in fields]},
    )


def induced_cycle_report(K: SimplicialComplex, field: FieldSpec | None = None) -> VerificationReport:
    """Lengths of induced cycles of a 2-sphere; reporting only."""
    field = field or FieldSpec.gf2()
    ok, n = is_sphere_proxy(K)
    if not ok or n != 2:
        return _skip("cycles", K, field, "not-a-2-sphere")
    lengths = Counter(J.bit_count() for J in induced_cycles(K))
    details = {
        "lengths": dict(sorted(lengths.items())),
        "has_length_1_mod_3": any(length % 3 == 1 for length in lengths),
        "primitive": is_primitive_sphere(K),
    }
    return _report("cycles", K, field, Status.PASS, details=details)


# -- driver --------------------------------------------------------------------

MAIN_CHECKS = ("duality", "theorem-a", "facet-removal", "neighborliness", "rank2")
EXTRA_CHECKS = ("cochain", "fields", "cycles")


def resolve_checks(names: Iterable[str]) -> list[str]:
    """Expand ``all`` and drop repeats, keeping first-seen order."""
    wanted: list[str] = []
    for name in names:
        for n in (MAIN_CHECKS if name == "all" else (name,)):
            if n not in MAIN_CHECKS + EXTRA_CHECKS:
                raise ValueError(f"unknown check {n!r}")
            if n not in wanted:
                wanted.append(n)
    return wanted


def needs_table(names: Iterable[str]) -> bool:
    return any(n in MAIN_CHECKS for n in resolve_checks(names))


def run_checks(
    K: SimplicialComplex,
    field: FieldSpec,
    names: Iterable[str],
    *,
    table: BigradedTable | None = None,
    **options,
) -> list[VerificationReport]:
    """Run named checks, sharing one HH table among those that need it.

    A precomputed ``table`` (for instance from a cached run) is used as is.
    """
    wanted = resolve_checks(names)
    if table is None and any(n in MAIN_CHECKS for n in wanted):
        table = hh_table(K, field, **options)

    reports = []
    for n in wanted:
        if n == "duality":
            reports.append(check_duality(K, field, table=table, **options))
        elif n == "theorem-a":
            reports.append(check_theorem_A(K, field, table=table, **options))
        elif n == "facet-removal":
            reports.append(facet_removal_scan(K, field, table=table, **options).report)
        elif n == "neighborliness":
            reports.append(check_neighborliness_criterion(K, field, table=table, **options))
        elif n == "rank2":
            reports.append(check_rank2_characterization(K, field, table=table, **options))
        elif n == "cochain":
            reports.append(check_cochain(K, field, **options))
        elif n == "fields":
            reports.append(check_field_agreement(K, **options))
        else:
            reports.append(induced_cycle_report(K, field))
    for r in reports:
        logger.debug("%s: %s", r.check, r.status.value)
    return reports
