"""Reading and writing family files and classification tables."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from pathlib import Path
from typing import Any

from . import __version__
from .designs import DifferenceFamily, MalformedFamilyError
from .facts import FACTS_VERSION
from .filters import Classification, Reason, Status, Verdict
from .groups import GroupSpec, parse_group_spec
from .params import ParamSet

CSV_COLUMNS = ["v", "m", "k", "lambda", "status", "filter_id", "citation"]


# -- family files ---------------------------------------------------------------


def family_to_dict(F: DifferenceFamily) -> dict[str, Any]:
    return {
        "group": str(F.group),
        "lambda": F.lam,
        "sets": [[list(g) for g in s] for s in F.sets],
    }


def dump_family(F: DifferenceFamily) -> str:
    return json.dumps(family_to_dict(F), separators=(",", ":")) + "\n"


def _element(G: GroupSpec, raw) -> tuple[int, ...]:
    if isinstance(raw, int) and not isinstance(raw, bool) and G.rank == 1:
        raw = [raw]
    if not isinstance(raw, (list, tuple)) or not all(isinstance(c, int) and not isinstance(c, bool) for c in raw):
        raise MalformedFamilyError(f"element {raw!r} is not a list of integers")
    return G.validate(raw)


def parse_document(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedFamilyError(f"not valid JSON: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise MalformedFamilyError("family document must be a JSON object")
    for key in ("group", "sets"):
        if key not in doc:
            raise MalformedFamilyError(f"missing field {key!r}")
    return doc


def parse_sets(doc: dict[str, Any]) -> tuple[GroupSpec, list[list[tuple[int, ...]]]]:
    G = parse_group_spec(str(doc["group"]))
    sets = doc["sets"]
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise MalformedFamilyError("'sets' must be a list of lists")
    return G, [[_element(G, g) for g in s] for s in sets]


def load_family(text: str) -> DifferenceFamily:
    doc = parse_document(text)
    if "lambda" not in doc:
        raise MalformedFamilyError("missing field 'lambda'")
    lam = doc["lambda"]
    if not isinstance(lam, int) or isinstance(lam, bool):
        raise MalformedFamilyError("'lambda' must be an integer")
    G, sets = parse_sets(doc)
    return DifferenceFamily(G, tuple(tuple(s) for s in sets), lam)


# -- classification output ------------------------------------------------------------


def verdict_row(vd: Verdict) -> list:
    v, m, k, lam = vd.params.astuple()
    return [v, m, k, lam, vd.status.value, vd.filter_id, vd.citation]


def classification_csv(C: Classification) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for vd in C.verdicts:
        w.writerow(verdict_row(vd))
    return buf.getvalue()


def classification_to_dict(C: Classification) -> dict[str, Any]:
    return {
        "version": __version__,
        "facts_version": FACTS_VERSION,
        "preset": C.preset,
        "v_max": C.v_max,
        "m_min": C.m_min,
        "m_max": C.m_max,
        "include_near_complete": C.include_near_complete,
        "summary": C.summary(),
        "verdicts": [verdict_to_dict(vd) for vd in C.verdicts],
    }


def verdict_to_dict(vd: Verdict) -> dict[str, Any]:
    v, m, k, lam = vd.params.astuple()
    d: dict[str, Any] = {
        "v": v, "m": m, "k": k, "lambda": lam,
        "status": vd.status.value,
        "reasons": [{"filter_id": r.filter_id, "citation": r.citation} for r in vd.reasons],
    }
    if vd.witness:
        d["witness"] = vd.witness
    return d


def verdict_from_dict(d: dict[str, Any]) -> Verdict:
    return Verdict(
        ParamSet(d["v"], d["m"], d["k"], d["lambda"]),
        Status(d["status"]),
        tuple(Reason(r["filter_id"], r["citation"]) for r in d["reasons"]),
        d.get("witness"),
    )


def classification_from_dict(d: dict[str, Any]) -> Classification:
    return Classification(
        d["preset"], d["v_max"], d["m_min"], d["m_max"], d["include_near_complete"],
        [verdict_from_dict(x) for x in d["verdicts"]],
    )


def classification_document(C: Classification) -> str:
    return json.dumps(classification_to_dict(C), indent=1) + "\n"


def classification_table(C: Classification) -> str:
    rows = [["params", "status", "filter"]]
    rows += [[str(vd.params), vd.status.value, vd.filter_id] for vd in C.verdicts]
    widths = [max(len(r[i]) for r in rows) for i in range(3)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    lines.append("")
    lines.append("  ".join(f"{s}={n}" for s, n in C.summary().items() if n))
    return "\n".join(lines) + "\n"


FORMATTERS = {
    "csv": classification_csv,
    "document": classification_document,
    "plain-table": classification_table,
}


# -- cache ------------------------------------------------------------------------


def default_cache_dir() -> Path:
    env = os.environ.get("SEDF_CACHE_DIR")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "sedf"


def cache_key(preset: str, v_max: int, m_min: int, m_max: int | None, include_nc: bool) -> str:
    raw = json.dumps([__version__, FACTS_VERSION, preset, v_max, m_min, m_max, include_nc])
    return hashlib.sha256(raw.encode()).hexdigest()[:24]


class ResultCache:
    def __init__(self, directory: Path):
        self.directory = Path(directory)

    def _path(self, key: str) -> Path:
        return self.directory / f"classify-{key}.json"

    def get(self, key: str) -> Classification | None:
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != __version__ or data.get("facts_version") != FACTS_VERSION:
            return None
        try:
            return classification_from_dict(data)
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, key: str, C: Classification) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(classification_document(C))
        tmp.replace(self._path(key))
