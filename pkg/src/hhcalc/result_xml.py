from __future__ import annotations

import xml.dom.minidom
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .document import RESULT_NS, ComplexSummary, ResultDocument


def _q(local: str) -> str:
    return f"{{{RESULT_NS}}}{local}"


@dataclass
class XmlBuilder:
    """ElementTree writer, used when lxml is not installed."""

    doc: ResultDocument

    def build_root(self) -> ET.Element:
        ET.register_namespace("", RESULT_NS)
        root = ET.Element(_q("HHResult"), {"schemaVersion": str(self.doc.schema_version)})
        c = self.doc.complex
        ET.SubElement(root, _q("Complex"), {
            "m": str(c.m), "dim": str(c.dim), "facetCount": str(c.facet_count), "hash": c.hash,
        })
        ET.SubElement(root, _q("Field")).text = self.doc.field
        for tag, rows in (("Hochster", self.doc.hochster), ("HH", self.doc.hh)):
            table = ET.SubElement(root, _q(tag))
            for e in rows:
                ET.SubElement(table, _q("Entry"), {"k": str(e["k"]), "l": str(e["l"]), "dim": str(e["dim"])})
        ET.SubElement(root, _q("HHTotalRank")).text = str(self.doc.hh_total_rank)
        if self.doc.timings:
            timings = ET.SubElement(root, _q("Timings"))
            for name, seconds in self.doc.timings.items():
                ET.SubElement(timings, _q("Phase"), {"name": name, "seconds": f"{seconds:.6f}"})
        return root

    def to_bytes(self) -> bytes:
        rough = ET.tostring(self.build_root(), encoding="utf-8", xml_declaration=True)
        return xml.dom.minidom.parseString(rough).toprettyxml(indent="  ", encoding="utf-8")

    def write(self, out_path: Path) -> Path:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_bytes(self.to_bytes())
        return out_path


try:
    from .result_xml_lxml import LxmlBuilder as PreferredBuilder

    HAS_LXML = True
except ImportError:
    PreferredBuilder = XmlBuilder
    HAS_LXML = False


def to_xml(doc: ResultDocument) -> bytes:
    return PreferredBuilder(doc).to_bytes()


def write_xml(doc: ResultDocument, out_path: Path) -> Path:
    return PreferredBuilder(doc).write(out_path)


def from_xml(data: bytes | str) -> ResultDocument:
    """Read a document written by :func:`to_xml` back into a ResultDocument."""
    root = ET.fromstring(data)
    if root.tag != _q("HHResult"):
        raise ValueError(f"not an HH result document: root element {root.tag}")
    c = root.find(_q("Complex"))
    if c is None:
        raise ValueError("missing <Complex> element")

    def rows(tag: str) -> list[dict[str, int]]:
        table = root.find(_q(tag))
        if table is None:
            return []
        return [
            {"k": int(e.get("k")), "l": int(e.get("l")), "dim": int(e.get("dim"))}
            for e in table.findall(_q("Entry"))
        ]

    timings_el = root.find(_q("Timings"))
    timings = None
    if timings_el is not None:
        timings = {p.get("name"): float(p.get("seconds")) for p in timings_el.findall(_q("Phase"))}
    return ResultDocument(
        complex=ComplexSummary(
            m=int(c.get("m")), dim=int(c.get("dim")), facet_count=int(c.get("facetCount")), hash=c.get("hash"),
        ),
        field=root.findtext(_q("Field"), default=""),
        hochster=rows("Hochster"),
        hh=rows("HH"),
        timings=timings,
        schema_version=int(root.get("schemaVersion", "0")),
    )
