"""Reading and writing model documents."""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, Union

import structlog
from pydantic import ValidationError

from soa_threat_toolkit.core.model import SystemModel, reference_violations
from soa_threat_toolkit.utils.exceptions import (
    ModelParseError,
    ModelReferenceError,
    ModelSchemaError,
)

logger = structlog.get_logger(__name__)

Document = Union[bytes, str]


def decode_document(document: Document, error_cls=ModelParseError) -> Dict[str, Any]:
    """Decode a UTF-8 JSON document into a dictionary.

    Args:
        document: Raw document bytes or text.
        error_cls: Exception raised when the document is not well formed.

    Returns:
        The decoded top-level object.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as e:
            raise error_cls(f"Document is not valid UTF-8: {e}")
    if not document.strip():
        raise error_cls("Document is empty")
    try:
        data = json.loads(document)
    except json.JSONDecodeError as e:
        raise error_cls(f"Malformed JSON at line {e.lineno} column {e.colno}: {e.msg}")
    if not isinstance(data, dict):
        raise error_cls("Top-level JSON value must be an object")
    return data


def schema_errors(error: ValidationError) -> list:
    """Flatten a pydantic ValidationError into readable strings."""
    return [
        f"{'.'.join(str(part) for part in item['loc']) or '<root>'}: {item['msg']}"
        for item in error.errors()
    ]


def parse_model(document: Document) -> SystemModel:
    """Parse a model document without resolving references.

    Raises:
        ModelParseError: If the document is not well-formed JSON.
        ModelSchemaError: If fields are unknown, missing or mistyped.
    """
    data = decode_document(document, ModelParseError)
    if "schema" not in data:
        raise ModelSchemaError("Model document lacks the 'schema' key", ["schema: field required"])
    try:
        return SystemModel.model_validate(data)
    except ValidationError as e:
        details = schema_errors(e)
        raise ModelSchemaError(f"Model document does not match the schema ({len(details)} errors)", details)


def load_model(document: Document) -> SystemModel:
    """Load a model document and resolve every cross-reference.

    Args:
        document: Raw UTF-8 JSON model document.

    Returns:
        The loaded SystemModel.

    Raises:
        ModelParseError: If the document is not well-formed JSON.
        ModelSchemaError: If fields are unknown, missing or mistyped.
        ModelReferenceError: If any id is referenced but never declared.
    """
    model = parse_model(document)
    dangling = reference_violations(model)
    if dangling:
        details = [str(v) for v in dangling]
        raise ModelReferenceError(
            f"Model references undeclared ids: {', '.join(sorted({v.element_id for v in dangling}))}",
            details,
        )
    logger.debug(
        "model_loaded",
        components=len(model.components),
        ecus=len(model.ecus),
        networks=len(model.networks),
        channels=len(model.channels),
    )
    return model


def load_model_file(path: Union[str, Path]) -> SystemModel:
    """Read and load a model document from disk.

    Raises:
        FileNotFoundError: The path does not exist.
        ModelParseError: The document is not well-formed JSON.
        ModelSchemaError: The document does not match the model schema.
        ModelReferenceError: A reference names an undeclared element.
    """
    return load_model(Path(path).read_bytes())


def dump_model(model: SystemModel) -> str:
    """Serialize a model as canonical JSON (sorted keys, schema key first by sort)."""
    data = model.model_dump(mode="json", by_alias=True)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(text: str) -> str:
    """``sha256:<hex>`` of the UTF-8 encoding of ``text``."""
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def model_digest(model: SystemModel) -> str:
    """Content digest of a model, independent of document formatting."""
    return digest(dump_model(model))
