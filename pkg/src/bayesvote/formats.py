"""Plain-text profile and weighted-majority-graph files.

Profile file::

    # comment
    m=3 kind=linear
    alt alice bob carol        (optional)
    2: 1>2>3
    1: 3>1>2

Tournament votes are bitstrings over pairs ``(i, j)``, ``i < j``, in
lexicographic order; ``1`` means ``i`` beats ``j``. Indices are 1-based.

WMG file::

    m=4
    1 2 2
    3 4 -4

Each line sets ``w(i, j)`` (and ``w(j, i) = -w``); unlisted pairs are 0.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import numpy as np

from .core import (
    AlternativeSet,
    LinearOrder,
    Profile,
    Tournament,
    VotingError,
    WeightedMajorityGraph,
    n_pairs,
    pair_index,
)


class FormatError(VotingError):
    def __init__(self, lineno: int, message: str, source: str = "<input>"):
        self.lineno = lineno
        self.source = source
        super().__init__(f"{source}:{lineno}: {message}")


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(lineno: int, line: str, keys: tuple[str, ...], source: str) -> dict[str, str]:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise FormatError(lineno, f"expected key=value in header, got {tok!r}", source)
        k, v = tok.split("=", 1)
        fields[k] = v
    missing = [k for k in keys if k not in fields]
    extra = [k for k in fields if k not in keys]
    if missing or extra:
        raise FormatError(lineno, f"header must contain exactly {', '.join(keys)}", source)
    return fields


def _parse_m(lineno: int, value: str, source: str) -> int:
    if not re.fullmatch(r"[0-9]+", value) or int(value) < 1:
        raise FormatError(lineno, f"m must be a positive integer, got {value!r}", source)
    return int(value)


def parse_profile(text: str, source: str = "<input>") -> Profile:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError(0, "empty profile file", source) from None
    fields = _parse_header(lineno, header, ("m", "kind"), source)
    m = _parse_m(lineno, fields["m"], source)
    kind = fields["kind"]
    if kind not in ("linear", "tournament"):
        raise FormatError(lineno, f"kind must be linear or tournament, got {kind!r}", source)

    labels: tuple[str, ...] = ()
    votes: list[tuple[object, int]] = []
    for lineno, line in lines:
        if line.startswith("alt ") or line == "alt":
            if labels or votes:
                raise FormatError(lineno, "the alt line must directly follow the header", source)
            labels = tuple(line.split()[1:])
            if len(labels) != m or len(set(labels)) != m:
                raise FormatError(lineno, f"expected {m} distinct labels", source)
            continue
        head, sep, body = line.partition(":")
        if not sep:
            raise FormatError(lineno, "vote lines look like '<count>: <body>'", source)
        head, body = head.strip(), body.strip()
        if not re.fullmatch(r"[0-9]+", head) or int(head) < 1:
            raise FormatError(lineno, f"count must be a positive integer, got {head!r}", source)
        if kind == "linear":
            parts = body.split(">")
            if not all(re.fullmatch(r"[0-9]+", p.strip()) for p in parts):
                raise FormatError(lineno, f"cannot read ranking {body!r}", source)
            ranking = [int(p) - 1 for p in parts]
            if sorted(ranking) != list(range(m)):
                raise FormatError(lineno, f"ranking {body!r} is not a permutation of 1..{m}", source)
            votes.append((LinearOrder(tuple(ranking)), int(head)))
        else:
            if not re.fullmatch(r"[01]*", body) or len(body) != n_pairs(m):
                raise FormatError(
                    lineno, f"tournament needs a bitstring of length {n_pairs(m)}, got {body!r}", source
                )
            votes.append((Tournament(m, tuple(ch == "1" for ch in body)), int(head)))
    return Profile(AlternativeSet(m, labels), kind, tuple(votes))


def format_profile(profile: Profile) -> str:
    out = [f"m={profile.m} kind={profile.kind}"]
    if not profile.alternatives.has_default_labels:
        out.append("alt " + " ".join(profile.alternatives.labels))
    for vote, count in profile.votes:
        if isinstance(vote, LinearOrder):
            body = ">".join(str(a + 1) for a in vote.ranking)
        else:
            body = "".join("1" if b else "0" for b in vote.beats)
        out.append(f"{count}: {body}")
    return "\n".join(out) + "\n"


def parse_wmg(text: str, source: str = "<input>") -> WeightedMajorityGraph:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError(0, "empty WMG file", source) from None
    m = _parse_m(lineno, _parse_header(lineno, header, ("m",), source)["m"], source)
    w = np.zeros((m, m), dtype=np.int64)
    seen = set()
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 3 or not all(re.fullmatch(r"-?[0-9]+", p) for p in parts):
            raise FormatError(lineno, "edge lines look like '<i> <j> <w>'", source)
        i, j, weight = int(parts[0]) - 1, int(parts[1]) - 1, int(parts[2])
        if not (0 <= i < m and 0 <= j < m) or i == j:
            raise FormatError(lineno, f"invalid pair ({i + 1}, {j + 1}) for m={m}", source)
        if weight % 2:
            raise FormatError(lineno, f"weight {weight} is odd", source)
        key = pair_index(min(i, j), max(i, j), m)
        if key in seen:
            raise FormatError(lineno, f"pair ({i + 1}, {j + 1}) listed twice", source)
        seen.add(key)
        w[i, j], w[j, i] = weight, -weight
    return WeightedMajorityGraph.from_margins(w)


def format_wmg(G: WeightedMajorityGraph) -> str:
    out = [f"m={G.m}"]
    for i in range(G.m):
        for j in range(G.m):
            if G.w[i, j] > 0:
                out.append(f"{i + 1} {j + 1} {int(G.w[i, j])}")
    return "\n".join(out) + "\n"


def read_profile(path: Union[str, Path]) -> Profile:
    path = Path(path)
    return parse_profile(path.read_text(encoding="utf-8"), str(path))


def write_profile(profile: Profile, path: Union[str, Path]) -> None:
    Path(path).write_text(format_profile(profile), encoding="utf-8", newline="\n")


def read_wmg(path: Union[str, Path]) -> WeightedMajorityGraph:
    path = Path(path)
    return parse_wmg(path.read_text(encoding="utf-8"), str(path))


def write_wmg(G: WeightedMajorityGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_wmg(G), encoding="utf-8", newline="\n")
