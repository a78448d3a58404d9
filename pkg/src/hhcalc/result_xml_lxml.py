from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from lxml import etree as LET

from .document import RESULT_NS, ResultDocument


@dataclass
class LxmlBuilder:
    doc: ResultDocument

    def build_root(self) -> LET._Element:
        root = LET.Element(LET.QName(RESULT_NS, "HHResult"), nsmap={None: RESULT_NS})
        root.set("schemaVersion", str(self.doc.schema_version))

        c = self.doc.complex
        cx = LET.SubElement(root, LET.QName(RESULT_NS, "Complex"))
        cx.set("m", str(c.m))
        cx.set("dim", str(c.dim))
        cx.set("facetCount", str(c.facet_count))
        cx.set("hash", c.hash)

        LET.SubElement(root, LET.QName(RESULT_NS, "Field")).text = self.doc.field

        for tag, rows in (("Hochster", self.doc.hochster), ("HH", self.doc.hh)):
            table = LET.SubElement(root, LET.QName(RESULT_NS, tag))
            for e in rows:
                entry = LET.SubElement(table, LET.QName(RESULT_NS, "Entry"))
                entry.set("k", str(e["k"]))
                entry.set("l", str(e["l"]))
                entry.set("dim", str(e["dim"]))

        LET.SubElement(root, LET.QName(RESULT_NS, "HHTotalRank")).text = str(self.doc.hh_total_rank)

        if self.doc.timings:
            timings = LET.SubElement(root, LET.QName(RESULT_NS, "Timings"))
            for name, seconds in self.doc.timings.items():
                phase = LET.SubElement(timings, LET.QName(RESULT_NS, "Phase"))
                phase.set("name", name)
                phase.set("seconds", f"{seconds:.6f}")
        return root

    def to_bytes(self) -> bytes:
        return LET.tostring(self.build_root(), pretty_print=True, xml_declaration=True, encoding="UTF-8")

    def write(self, out_path: Path) -> Path:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_bytes(self.to_bytes())
        return out_path
