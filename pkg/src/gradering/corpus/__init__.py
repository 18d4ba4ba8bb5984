"""Document format, worked-example fixtures and instance families."""

from __future__ import annotations

import os
from pathlib import Path

from .examples import EXAMPLE_IDS, EXTRA_IDS, SHIPPED, CatalogExample, build_paper_example
from .expectations import Check, load_instance, run_expectations
from .families import enumerate_instances, truncated_poly_ring
from .io import (RingDocument, Report, document_from, emit_report, emit_spec, load_document,
                 parse_report, parse_spec)

DATA_DIR = Path(__file__).with_name("data")


def shipped_path(name: str) -> Path | None:
    """Resolve an example id or file name to a shipped ``.ring.json`` file."""
    stem = os.path.basename(name).removesuffix(".ring.json").removesuffix(".ring")
    for candidate in (stem, f"{stem}-verbatim"):
        path = DATA_DIR / f"{candidate}.ring.json"
        if path.is_file():
            return path
    return None


def shipped_documents() -> dict[str, RingDocument]:
    return {stem: load_document(DATA_DIR / f"{stem}.ring.json") for stem in SHIPPED}


def regenerate_document(stem: str) -> RingDocument:
    eid, p, k = SHIPPED[stem]
    return build_paper_example(eid, p, k).document()


__all__ = [
    "Check", "DATA_DIR", "EXAMPLE_IDS", "EXTRA_IDS", "CatalogExample", "Report", "RingDocument",
    "SHIPPED", "build_paper_example", "document_from", "emit_report", "emit_spec",
    "enumerate_instances", "load_document", "load_instance", "parse_report", "parse_spec",
    "regenerate_document", "run_expectations", "shipped_documents", "shipped_path",
    "truncated_poly_ring",
]
