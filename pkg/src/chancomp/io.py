"""Channel files, command-line channel shorthand, CSV and run manifests.

Channel files are JSON documents with fields `name`, `input_size`,
`output_size`, `rows`, and optionally `kind` + `param` for canonical
channels. When `kind` is present the rows are regenerated from it and, if
`rows` is also present, the two must agree bit-identically.

CSV outputs use a header row, 6-decimal fixed point, and "\n" line
endings. Every file-producing command writes a manifest next to its
output; replaying a manifest reproduces the outputs bit-identically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, asdict, is_dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .channels import Channel, ChannelError, make_channel, standard_channel

__all__ = [
    "ParseError",
    "parse_channel_spec",
    "load_channel_file",
    "channel_to_doc",
    "save_channel_file",
    "format_fixed",
    "write_csv",
    "read_csv",
    "RunManifest",
    "write_manifest",
    "load_manifest",
    "to_jsonable",
]

SHORTHAND_KINDS = {"bsc": "bsc", "bec": "bec", "z": "zchannel", "zchannel": "zchannel", "identity": "identity", "id": "identity"}


class ParseError(ValueError):
    """Malformed channel file or command-line channel spec."""


def parse_channel_spec(text: str) -> Channel:
    """Parse `kind:param` shorthand or load a channel file path."""
    if ":" in text:
        head, _, tail = text.partition(":")
        if head.lower() in SHORTHAND_KINDS:
            kind = SHORTHAND_KINDS[head.lower()]
            try:
                param = int(tail) if kind == "identity" else float(tail)
                return standard_channel(kind, param)
            except (ValueError, ChannelError) as exc:
                raise ParseError(f"bad channel shorthand {text!r}: {exc}") from None
    path = Path(text)
    if not path.exists():
        raise ParseError(f"{text!r} is neither channel shorthand (kind:param) nor an existing file")
    return load_channel_file(path)


def load_channel_file(path) -> Channel:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read channel file {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"channel file {path} must hold a JSON object")
    rows = doc.get("rows")
    kind = doc.get("kind")
    if kind is not None:
        try:
            ch = standard_channel(kind, doc.get("param"))
        except ChannelError as exc:
            raise ParseError(f"channel file {path}: {exc}") from None
        if rows is not None and not np.array_equal(np.array(rows, dtype=float), ch.rows):
            raise ParseError(f"channel file {path}: rows disagree with kind={kind!r} param={doc.get('param')!r}")
    elif rows is not None:
        try:
            ch = make_channel(rows)
        except ChannelError as exc:
            raise ParseError(f"channel file {path}: {exc}") from None
    else:
        raise ParseError(f"channel file {path} needs 'rows' or 'kind'")
    for key, actual in (("input_size", ch.input_size), ("output_size", ch.output_size)):
        if key in doc and doc[key] != actual:
            raise ParseError(f"channel file {path}: {key} = {doc[key]} but the matrix implies {actual}")
    return ch


def channel_to_doc(ch: Channel, name: str | None = None, kind: str | None = None, param=None) -> dict:
    doc = {}
    if name:
        doc["name"] = name
    if kind:
        doc["kind"] = kind
        doc["param"] = param
    doc["input_size"] = ch.input_size
    doc["output_size"] = ch.output_size
    doc["rows"] = [list(map(float, row)) for row in ch.rows]
    return doc


def save_channel_file(path, ch: Channel, **meta):
    Path(path).write_text(json.dumps(channel_to_doc(ch, **meta), indent=2) + "\n")


def format_fixed(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.6f}"


def write_csv(path, header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_fixed(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text, newline="")
    return text


def read_csv(path):
    lines = Path(path).read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return header, rows


@dataclass(frozen=True)
class RunManifest:
    """Everything needed to reproduce a command's outputs bit-identically."""

    command: tuple
    seed: int
    budget: dict
    tool_version: str
    wall_time_s: float

    @staticmethod
    def capture(argv, seed, budget: dict, wall_time_s: float) -> "RunManifest":
        return RunManifest(tuple(argv), int(seed), dict(budget), __version__, float(wall_time_s))


def manifest_path(out_path) -> Path:
    out = Path(out_path)
    return out.with_name(out.name + ".manifest.json")


def write_manifest(out_path, manifest: RunManifest) -> Path:
    path = manifest_path(out_path)
    path.write_text(json.dumps(asdict(manifest), indent=2, sort_keys=True) + "\n")
    return path


def load_manifest(path) -> RunManifest:
    doc = json.loads(Path(path).read_text())
    return RunManifest(tuple(doc["command"]), doc["seed"], doc["budget"], doc["tool_version"], doc["wall_time_s"])


def to_jsonable(obj):
    """Recursively convert dataclasses / numpy containers to JSON-friendly types."""
    if is_dataclass(obj) and not isinstance(obj, type):
        return {k: to_jsonable(v) for k, v in asdict(obj).items()}
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj
