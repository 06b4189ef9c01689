"""Versioned JSON documents for every serializable object.

A document is a JSON object ``{"version": 1, "type": <kind>, ...}`` where the
remaining keys are the object's own serialization.  ``emit_map`` produces a
canonical compact form so that ``emit_map(parse_map(text)) == text`` for any
canonical text.
"""

from __future__ import annotations

import json
from typing import Any, Union

from .errors import UsageError
from .fastforward import FastForwardForm
from .trigroup import ConjugationCertificate, TriangularPermutation
from .zflow import FlowMap, LevelFlow

VERSION = 1

KINDS = {
    "triangular": TriangularPermutation,
    "fastforward": FastForwardForm,
    "flow": FlowMap,
    "levelflow": LevelFlow,
    "certificate": ConjugationCertificate,
}

MapDocument = Union[TriangularPermutation, FastForwardForm, FlowMap, LevelFlow, ConjugationCertificate]


def kind_of(obj: Any) -> str:
    for kind, cls in KINDS.items():
        if isinstance(obj, cls):
            return kind
    raise UsageError(f"cannot serialize {type(obj).__name__}")


def to_document(obj: MapDocument, **extra: Any) -> dict:
    doc = {"version": VERSION, "type": kind_of(obj)}
    doc.update(obj.to_dict())
    doc.update(extra)
    return doc


def emit_map(obj: MapDocument, **extra: Any) -> str:
    return json.dumps(to_document(obj, **extra), separators=(",", ":")) + "\n"


def load_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise UsageError("document must be a JSON object")
    if "version" not in doc:
        raise UsageError("document has no 'version' field")
    if doc["version"] != VERSION:
        raise UsageError(f"unsupported document version {doc['version']!r} (expected {VERSION})")
    if doc.get("type") not in KINDS:
        raise UsageError(f"unknown document type {doc.get('type')!r}; expected one of {sorted(KINDS)}")
    return doc


def parse_map(text: str) -> MapDocument:
    doc = load_document(text)
    return KINDS[doc["type"]].from_dict(doc)
