"""Text formats: "tt" truth tables, corpus files and spectrum JSON."""

from __future__ import annotations

import json
import re

from .boolfn import BooleanFunction, WalshSpectrum
from .errors import DomainError
from .search import Corpus


class FormatError(DomainError):
    pass


_HEADER = re.compile(r"^n=(\d+)$")
_CORPUS_HEADER = re.compile(r"^corpus n=(\d+) s=(\d+) count=(\d+)$")


def format_tt(f: BooleanFunction) -> str:
    return f"n={f.n}\n{f.to_string()}\n"


def parse_tt(text: str) -> BooleanFunction:
    lines = text.splitlines()
    if len(lines) != 2:
        raise FormatError("tt format is exactly two lines: n=<k> and the table")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise FormatError(f"bad tt header {lines[0]!r}")
    n = int(m.group(1))
    bits = lines[1].strip()
    if len(bits) != 1 << n:
        raise FormatError(f"expected {1 << n} table characters, got {len(bits)}")
    try:
        return BooleanFunction.from_string(bits)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_tt(path) -> BooleanFunction:
    with open(path) as fh:
        return parse_tt(fh.read())


def write_tt(path, f: BooleanFunction) -> None:
    with open(path, "w") as fh:
        fh.write(format_tt(f))


def spectrum_to_json(W: WalshSpectrum) -> dict:
    return {"n": W.n, "values": W.values.tolist()}


def spectrum_from_json(obj) -> WalshSpectrum:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return WalshSpectrum(int(obj["n"]), obj["values"])


def format_corpus(corpus: Corpus) -> str:
    parts = [f"corpus n={corpus.n} s={corpus.s} count={len(corpus)}\n"]
    parts.extend(format_tt(f) for f in corpus)
    return "".join(parts)


def parse_corpus(text: str) -> Corpus:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty corpus file")
    m = _CORPUS_HEADER.match(lines[0].strip())
    if not m:
        raise FormatError(f"bad corpus header {lines[0]!r}")
    n, s, count = (int(g) for g in m.groups())
    body = lines[1:]
    if len(body) != 2 * count:
        raise FormatError(f"corpus header announces {count} records, found {len(body) / 2:g}")
    funcs = [parse_tt(body[k] + "\n" + body[k + 1]) for k in range(0, len(body), 2)]
    if any(f.n != n for f in funcs):
        raise FormatError("corpus record with the wrong n")
    return Corpus(n, s, funcs, {"kind": "file"})


def read_corpus(path) -> Corpus:
    with open(path) as fh:
        return parse_corpus(fh.read())


def write_corpus(path, corpus: Corpus) -> None:
    with open(path, "w") as fh:
        fh.write(format_corpus(corpus))
