"""The ResultDocument written by ``hhcalc hh``."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .bigraded import BigradedTable, DoubleHomology, TableKind

SCHEMA_VERSION = 1
RESULT_NS = "urn:hhcalc:result:1"


@dataclass(frozen=True)
class ComplexSummary:
    m: int
    dim: int
    facet_count: int
    hash: str


def _entries(table: Mapping[tuple[int, int], int]) -> list[dict[str, int]]:
    rows = sorted(((k, two_l // 2, d) for (k, two_l), d in table.items() if d), key=lambda r: (r[1], r[0]))
    return [{"k": k, "l": l, "dim": d} for k, l, d in rows]


@dataclass
class ResultDocument:
    complex: ComplexSummary
    field: str
    hochster: list[dict[str, int]]
    hh: list[dict[str, int]]
    timings: dict[str, float] | None = None
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def from_result(cls, result: DoubleHomology, with_timings: bool = False) -> "ResultDocument":
        K = result.K
        return cls(
            complex=ComplexSummary(m=K.m, dim=K.dim, facet_count=len(K.facets), hash=K.hash),
            field=result.field.label,
            hochster=_entries(result.hochster.entries),
            hh=_entries(result.hh.entries),
            timings={k: round(v, 6) for k, v in result.timings.items()} if with_timings else None,
        )

    @property
    def hh_total_rank(self) -> int:
        return sum(e["dim"] for e in self.hh)

    def table(self, kind: TableKind = TableKind.HH) -> BigradedTable:
        rows = self.hh if kind is TableKind.HH else self.hochster
        return BigradedTable(
            {(e["k"], 2 * e["l"]): e["dim"] for e in rows},
            m=self.complex.m,
            field=self.field,
            complex_hash=self.complex.hash,
            kind=kind,
        )

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "schema_version": self.schema_version,
            "complex": {
                "m": self.complex.m,
                "dim": self.complex.dim,
                "facet_count": self.complex.facet_count,
                "hash": self.complex.hash,
            },
            "field": self.field,
            "hochster": self.hochster,
            "hh": self.hh,
            "hh_total_rank": self.hh_total_rank,
        }
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ResultDocument":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ValueError(f"unsupported ResultDocument schema_version {version!r}")
        c = data["complex"]
        doc = cls(
            complex=ComplexSummary(m=c["m"], dim=c["dim"], facet_count=c["facet_count"], hash=c["hash"]),
            field=data["field"],
            hochster=[dict(e) for e in data["hochster"]],
            hh=[dict(e) for e in data["hh"]],
            timings=data.get("timings"),
        )
        if data.get("hh_total_rank", doc.hh_total_rank) != doc.hh_total_rank:
            raise ValueError("hh_total_rank does not match the hh entries")
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        """Human table; not a compatibility surface."""
        c = self.complex
        lines = [
            f"complex  m={c.m} dim={c.dim} facets={c.facet_count} hash={c.hash[:16]}",
            f"field    {self.field}",
        ]
        for title, rows in (("Hochster", self.hochster), ("HH", self.hh)):
            lines.append("")
            lines.append(f"{title}:")
            lines.append(f"  {'(-k,2l)':>12}  {'(j,l)':>9}  dim")
            for e in rows:
                k, l, d = e["k"], e["l"], e["dim"]
                lines.append(f"  {f'({k},{2 * l})':>12}  {f'({k + l},{l})':>9}  {d}")
        lines.append("")
        lines.append(f"HH total rank: {self.hh_total_rank}")
        if self.timings:
            lines.append("timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in self.timings.items()))
        return "\n".join(lines) + "\n"
