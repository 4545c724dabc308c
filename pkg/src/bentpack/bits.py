"""Minimal MSB-first bit writer/reader over '0'/'1' strings."""

from __future__ import annotations

from typing import Iterable

from .errors import MalformedStream


class BitWriter:
    def __init__(self):
        self._parts: list[str] = []
        self._length = 0

    def write(self, value: int, width: int) -> None:
        if width == 0:
            if value:
                raise ValueError("nonzero value in a zero-width field")
            return
        if value < 0 or value >> width:
            raise ValueError(f"{value} does not fit in {width} bits")
        self._parts.append(format(value, f"0{width}b"))
        self._length += width

    def write_bits(self, bits: Iterable[int]) -> None:
        chunk = "".join("1" if b else "0" for b in bits)
        self._parts.append(chunk)
        self._length += len(chunk)

    def __len__(self) -> int:
        return self._length

    def getvalue(self) -> str:
        return "".join(self._parts)


class BitReader:
    def __init__(self, bits: str):
        self._bits = bits
        self._pos = 0

    def read(self, width: int) -> int:
        if width == 0:
            return 0
        end = self._pos + width
        if end > len(self._bits):
            raise MalformedStream("section ends before its last field")
        value = int(self._bits[self._pos:end], 2)
        self._pos = end
        return value

    def read_bits(self, count: int) -> list[int]:
        end = self._pos + count
        if end > len(self._bits):
            raise MalformedStream("section ends before its last field")
        out = [c == "1" for c in self._bits[self._pos:end]]
        self._pos = end
        return [int(b) for b in out]

    @property
    def remaining(self) -> int:
        return len(self._bits) - self._pos

    def expect_end(self) -> None:
        if self.remaining:
            raise MalformedStream(f"{self.remaining} unexpected trailing bits in section")


def bits_to_bytes(bits: str) -> bytes:
    """Pad to a byte boundary with zeros."""
    if not bits:
        return b""
    pad = (-len(bits)) % 8
    padded = bits + "0" * pad
    return int(padded, 2).to_bytes(len(padded) // 8, "big")


def bytes_to_bits(data: bytes, nbits: int) -> str:
    if nbits > 8 * len(data):
        raise MalformedStream("section shorter than its length prefix")
    if not data:
        return ""
    return format(int.from_bytes(data, "big"), f"0{8 * len(data)}b")[:nbits]
