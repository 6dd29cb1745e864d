"""
Storage utilities: formula files and JSON/JSONL persistence for reports.
"""
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Sequence, Union

from .dnf import DnfFormula, parse_dnf, serialize

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def read_formula(path: PathLike, allow_tautology: bool = False) -> DnfFormula:
    """Parse a formula file (raises OSError if unreadable, DnfParseError if malformed)."""
    formula = parse_dnf(Path(path).read_bytes(), allow_tautology=allow_tautology)
    logger.debug(f"Loaded {path}: n={formula.n}, m={formula.m}")
    return formula


def write_formula(path: PathLike, formula: DnfFormula, comments: Sequence[str] = ()) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(serialize(formula, comments))
    logger.info(f"Saved formula (n={formula.n}, m={formula.m}) to {path}")


def write_jsonl(path: PathLike, records: Iterable[Dict]) -> int:
    """One JSON object per line, replacing any existing file; returns the record count."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    lines = [json.dumps(r) for r in records]
    p.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
    logger.info(f"Saved {len(lines)} run records to {path}")
    return len(lines)


def save_json(path: PathLike, obj: Dict) -> None:
    """Indented JSON report; counts are expected as decimal strings already."""
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Saved report to {path}")
