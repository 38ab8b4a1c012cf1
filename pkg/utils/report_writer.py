"""
Report Writer for the Zhelobenko/Kostant verification engine
Serializes computation results into versioned JSON documents or plain-text tables and
writes them to disk atomically
"""

import json
import logging
import os
import shutil
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from algebra.exact import LinearFraction, Poly, format_scalar
from lie.root_system import LieType, Weight
from utils.error_handler import ReportError, handle_exception

logger = logging.getLogger(__name__)

SCHEMA = "zhelobenko-report/1"


def serialize(value: Any) -> Any:
    """
    Convert a result value into JSON-compatible data.

    Rationals become "p/q" strings and polynomials their canonical text form; no value
    is ever turned into a float.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        raise ReportError(f"Refusing to serialize float {value!r}; values must be exact")
    if hasattr(value, "to_dict"):
        return serialize(value.to_dict())
    if isinstance(value, (Poly, LinearFraction, LieType)):
        return str(value)
    if isinstance(value, Weight):
        return {"basis": value.basis.value, "coords": [format_scalar(x) for x in value.coords]}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if is_dataclass(value):
        return serialize(asdict(value))
    try:
        return format_scalar(value)
    except Exception as e:
        raise ReportError(f"Cannot serialize value of type {type(value).__name__}", original_exception=e)


def _result_dict(result: Any, deterministic: bool) -> Dict[str, Any]:
    if hasattr(result, "to_dict"):
        try:
            data = result.to_dict(deterministic)
        except TypeError:
            data = result.to_dict()
    else:
        data = result
    if not isinstance(data, dict):
        raise ReportError(f"Result of type {type(result).__name__} is not a mapping")
    return serialize(data)


def overall_verdict(results: Sequence[Dict[str, Any]]) -> str:
    """'fail' if any result carries a failing verdict, else 'pass' (also for no results)."""
    return "fail" if any(r.get("verdict") == "fail" for r in results) else "pass"


class ReportWriter:
    """
    Builds report documents and writes them out

    Args:
        deterministic: Drop timing fields so identical runs produce identical bytes
    """

    def __init__(self, deterministic: bool = False):
        self.deterministic = deterministic

    def to_document(self, results: Sequence[Any]) -> Dict[str, Any]:
        rendered = [_result_dict(r, self.deterministic) for r in results]
        return {"schema": SCHEMA, "verdict": overall_verdict(rendered), "results": rendered}

    def emit(self, results: Sequence[Any], fmt: str = "json") -> str:
        """
        Serialize results.

        Args:
            results: Report objects (with ``to_dict``) or plain mappings
            fmt: 'json' or 'text'

        Returns:
            str: The document, ending in a newline
        """
        document = self.to_document(results)
        if fmt == "json":
            return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        if fmt == "text":
            return self._text(document)
        raise ReportError(f"Unknown report format {fmt!r}")

    def _text(self, document: Dict[str, Any]) -> str:
        lines = [f"schema  {document['schema']}", f"verdict {document['verdict']}"]
        for index, result in enumerate(document["results"]):
            lines.append("")
            lines.append(f"[{index + 1}] {result.get('kind', 'result')}")
            lines.extend(_text_rows(result, indent=2))
        return "\n".join(lines) + "\n"

    @handle_exception
    def save(self, text: str, filepath: Union[str, Path]) -> Path:
        """
        Write a report atomically: temporary file, read-back check, then move.

        Raises:
            ReportError: If the file cannot be written
        """
        filepath = Path(filepath)
        if not str(filepath).strip():
            raise ReportError("Empty output path provided")
        temp_file = filepath.with_suffix(filepath.suffix + ".tmp")
        try:
            filepath.parent.mkdir(parents=True, exist_ok=True)
            with open(temp_file, "w", encoding="utf-8") as f:
                f.write(text)
            with open(temp_file, "r", encoding="utf-8") as f:
                if f.read() != text:
                    raise ReportError("Report read back differs from what was written", str(filepath))
            shutil.move(str(temp_file), str(filepath))
        except OSError as e:
            raise ReportError(f"Could not write report: {filepath}", str(filepath), e) from e
        finally:
            if temp_file.exists():
                os.unlink(temp_file)

        logger.info(f"Report saved to: {filepath}")
        return filepath

    def load_json(self, filepath: Union[str, Path]) -> Optional[Dict[str, Any]]:
        """Load a JSON report; None if it is missing or malformed."""
        filepath = Path(filepath)
        if not filepath.exists():
            logger.warning(f"Report not found: {filepath}")
            return None
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.error(f"Failed to load report from {filepath}: {e}")
            return None


def _text_rows(data: Any, indent: int) -> List[str]:
    pad = " " * indent
    rows = []
    if isinstance(data, dict):
        width = max((len(str(k)) for k in data), default=0)
        for key in sorted(data):
            value = data[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                rows.append(f"{pad}{str(key).ljust(width)}")
                rows.extend(_text_rows(value, indent + 2))
            else:
                rows.append(f"{pad}{str(key).ljust(width)}  {_inline(value)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, dict):
                rows.append(f"{pad}- " + ", ".join(f"{k}={_inline(item[k])}" for k in sorted(item)))
            else:
                rows.append(f"{pad}- {_inline(item)}")
    return rows


def _is_flat(value: Any) -> bool:
    items = value.values() if isinstance(value, dict) else value
    return all(not isinstance(v, (dict, list)) for v in items)


def _inline(value: Any) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_inline(value[k])}" for k in sorted(value)) + "}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
