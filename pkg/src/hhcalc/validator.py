from __future__ import annotations

from pathlib import Path
from xml.etree import ElementTree

import xmlschema
from xmlschema.validators.exceptions import XMLSchemaException, XMLSchemaValidationError

from .config import DEFAULT_CONFIG
from .document import RESULT_NS

DEFAULT_XSD = DEFAULT_CONFIG.parent / "xsd" / "hh-result-1.xsd"


def _as_path(p) -> Path:
    return p if isinstance(p, Path) else Path(p)


def load_schema(xsd: Path) -> xmlschema.XMLSchema:
    """Load the result schema and make sure it declares ``HHResult``."""
    if not xsd.exists():
        raise RuntimeError(f"Result XSD not found: {xsd}")
    try:
        schema = xmlschema.XMLSchema(str(xsd), base_url=xsd.parent.resolve().as_uri())
    except Exception as e:
        raise RuntimeError(
            "Failed to load the result XML Schema.\n"
            f"XSD: {xsd}\n"
            f"Error: {e}"
        ) from e
    key = f"{{{RESULT_NS}}}HHResult"
    if key not in schema.maps.elements:
        declared = "\n  - ".join(sorted(schema.maps.elements)) or "(none)"
        raise RuntimeError(
            f"Result XSD loaded, but it does NOT declare 'HHResult' in namespace {RESULT_NS}.\n"
            f"XSD: {xsd}\n"
            "Declared global elements:\n"
            f"  - {declared}"
        )
    return schema


def validate_xml(source, xsd=None) -> None:
    """Validate an XML ResultDocument (path or bytes).

    Raises:
      - RuntimeError on failure with the schema path and the validation error.
    """
    xsd = _as_path(xsd) if xsd else DEFAULT_XSD
    schema = load_schema(xsd)
    instance = str(source) if isinstance(source, Path) else ElementTree.fromstring(source)
    try:
        schema.validate(instance)
    except XMLSchemaValidationError as ve:
        raise RuntimeError(
            "XML validation failed.\n"
            f"XSD: {xsd}\n"
            f"Validation error: {ve.reason or ve}"
        ) from ve
    except XMLSchemaException as xe:
        raise RuntimeError(
            "XML validation encountered a schema processing error.\n"
            f"XSD: {xsd}\n"
            f"Error: {xe}"
        ) from xe
