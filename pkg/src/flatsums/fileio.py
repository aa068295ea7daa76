"""Shared file formats: frequency-set files, sign columns, JSON reports.

Frequency sets travel as UTF-8 text, one base-10 positive integer per
line, strictly increasing, with ``#`` comment lines ignored -- or as JSON
``{"freqs": [...]}``.  Generators drop a ``<path>.prov.json`` sidecar with
their parameters so any output file can be regenerated.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .core import FrequencySet
from .errors import DomainError
from .perturb import SignVector

PathLike = Union[str, Path]


def load_frequency_set(path: PathLike) -> FrequencySet:
    text = Path(path).read_text(encoding="utf-8")
    return parse_frequency_set(text, name=str(path))


def parse_frequency_set(text: str, name: str = "<input>") -> FrequencySet:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{name}: invalid JSON: {exc}") from None
        if not isinstance(payload, dict) or "freqs" not in payload:
            raise DomainError(f'{name}: JSON must be an object with "freqs"')
        try:
            return FrequencySet(payload["freqs"])
        except (TypeError, ValueError) as exc:
            raise DomainError(f"{name}: {exc}") from None
    freqs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        try:
            freqs.append(int(body, 10))
        except ValueError:
            raise DomainError(
                f"{name}:{lineno}: expected a base-10 integer, got {body!r}"
            ) from None
    if not freqs:
        raise DomainError(f"{name}: no frequencies found")
    return FrequencySet(freqs)


def format_frequency_set(s: FrequencySet, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"freqs": list(s.freqs)}) + "\n"
    if fmt in ("text", "csv"):
        return "\n".join(str(v) for v in s.freqs) + "\n"
    raise DomainError(f"unknown format {fmt!r}")


def save_frequency_set(s: FrequencySet, path: PathLike,
                       fmt: str = "text") -> None:
    Path(path).write_text(format_frequency_set(s, fmt), encoding="utf-8")


def save_provenance(path: PathLike, params: dict) -> Path:
    side = Path(str(path) + ".prov.json")
    side.write_text(json.dumps(params, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return side


def load_signs(path: PathLike, n: int) -> SignVector:
    """Read a +/-1 column aligned with a frequency file."""
    eps = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8")
                                  .splitlines(), 1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        if body in ("+1", "1"):
            eps.append(1)
        elif body == "-1":
            eps.append(-1)
        else:
            raise DomainError(f"{path}:{lineno}: expected +1 or -1, got {body!r}")
    if len(eps) != n:
        raise DomainError(
            f"{path}: {len(eps)} signs for a set of {n} frequencies")
    return SignVector(tuple(eps))


def format_signs(eps: SignVector) -> str:
    return "\n".join("+1" if e > 0 else "-1" for e in eps.eps) + "\n"


def save_signs(eps: SignVector, path: PathLike) -> None:
    Path(path).write_text(format_signs(eps), encoding="utf-8")
