"""Statistics of zero values on 2-dimensional flats.

Exact rationals throughout; bit costs are kept as ``a + b*log2(6)`` with
rational ``a`` and ``b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .boolfn import BooleanFunction, classify_plateau, coord_mask, weights
from .errors import BadCoordinate, EmptyRegion, NotPlateaued

LOG2_6 = math.log2(6)


def subspace_count(n: int) -> int:
    """Number of 2-dimensional affine subspaces through a fixed point."""
    return ((1 << n) - 1) * ((1 << n) - 2) // 6


@dataclass(frozen=True)
class SubspaceCensus:
    V: int
    S: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.S, self.V)

    def to_dict(self) -> dict:
        fr = self.fraction
        return {"V": self.V, "S": self.S, "fraction": f"{fr.numerator}/{fr.denominator}"}


def odd_parity_formula(n: int, s: int) -> Fraction:
    """Closed-form S(x)/V for an s-plateaued function."""
    num = (1 << (n + s)) - 3 * (1 << n) + 2
    den = 2 * ((1 << n) - 1) * ((1 << n) - 2)
    return Fraction(1, 2) - Fraction(num, den)


def subspace_census(f: BooleanFunction, x: int) -> SubspaceCensus:
    """Brute-force count of 2-flats through ``x`` with an odd number of zeros.

    Ordered pairs (y, z) of distinct nonzero directions are enumerated; each
    flat {x, x+y, x+z, x+y+z} is hit six times.
    """
    n = f.n
    if n < 2:
        raise BadCoordinate("2-flats need n >= 2")
    x = int(x)
    t = f.table
    dirs = np.arange(1, 1 << n, dtype=np.int64)
    base = int(t[x])
    odd = 0
    # row-by-row keeps memory at O(2**n)
    for y in dirs:
        z = dirs[dirs != y]
        par = base ^ t[x ^ y] ^ t[x ^ z] ^ t[x ^ y ^ z]
        odd += int(par.sum())
    V = subspace_count(n)
    assert odd % 6 == 0
    return SubspaceCensus(V, odd // 6)


def odd_parity_fraction(f: BooleanFunction, x: int) -> Fraction:
    if not classify_plateau(f).plateaued:
        raise NotPlateaued("odd_parity_fraction expects a plateaued function")
    return subspace_census(f, x).fraction


def _check_face(n: int, face_coords) -> tuple[int, int]:
    i, j = (int(c) for c in face_coords)
    if i == j:
        raise BadCoordinate("face coordinates must be distinct")
    coord_mask(n, i)
    coord_mask(n, j)
    return (i, j) if i < j else (j, i)


def face_values(f: BooleanFunction, face_coords) -> np.ndarray:
    """Shape (2**(n-2), 4): row = translate in compressed order, column = 2*x_i + x_j."""
    i, j = _check_face(f.n, face_coords)
    cube = np.moveaxis(f.table.reshape([2] * f.n), [i - 1, j - 1], [-2, -1])
    return cube.reshape(-1, 4)


def face_members(n: int, face_coords) -> np.ndarray:
    """Full indices matching :func:`face_values` entry by entry."""
    idx = np.arange(1 << n, dtype=np.int64)
    return face_values_of_array(idx, n, face_coords)


def face_values_of_array(arr: np.ndarray, n: int, face_coords) -> np.ndarray:
    i, j = _check_face(n, face_coords)
    cube = np.moveaxis(np.asarray(arr).reshape([2] * n), [i - 1, j - 1], [-2, -1])
    return cube.reshape(-1, 4)


def translate_weights(n: int) -> np.ndarray:
    """Weight of each translate's base point on the complementary coordinates."""
    return weights(n - 2)


def region_mask(n: int, region) -> np.ndarray:
    """Boolean mask over translates; region is "all" or an integer ball radius."""
    if region == "all" or region is None:
        return np.ones(1 << (n - 2), dtype=bool)
    return translate_weights(n) <= int(region)


@dataclass(frozen=True)
class FaceHistogram:
    counts: tuple[int, int, int, int, int]
    region: str

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def odd(self) -> int:
        return self.counts[1] + self.counts[3]

    @property
    def even(self) -> int:
        return self.counts[0] + self.counts[2] + self.counts[4]

    @property
    def constant(self) -> int:
        return self.counts[0] + self.counts[4]

    def as_dict(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.counts) if c}


def face_histogram(f: BooleanFunction, face_coords, region="all") -> FaceHistogram:
    zeros = 4 - face_values(f, face_coords).sum(axis=1, dtype=np.int64)
    zeros = zeros[region_mask(f.n, region)]
    counts = tuple(int(c) for c in np.bincount(zeros, minlength=5))
    label = "all" if region in ("all", None) else f"ball({int(region)})"
    return FaceHistogram(counts, label)


def odd_face_fraction(f: BooleanFunction, face_coords) -> Fraction:
    """Fraction of all translates of the face holding an odd number of zeros."""
    par = np.bitwise_xor.reduce(face_values(f, face_coords), axis=1)
    return Fraction(int(par.sum()), par.size)


@dataclass(frozen=True)
class BitCost:
    """``rational + log6 * log2(6)`` bits."""

    rational: Fraction
    log6: Fraction

    def __float__(self) -> float:
        return float(self.rational) + float(self.log6) * LOG2_6

    def __str__(self) -> str:
        return f"{self.rational} + {self.log6}*log2(6) (~{float(self):.6f})"


def per_face_bit_cost(h: FaceHistogram) -> BitCost:
    if h.total == 0:
        raise EmptyRegion("histogram covers no faces")
    return BitCost(Fraction(2 * h.odd, h.total), Fraction(h.counts[2], h.total))


def census_report(f: BooleanFunction, x: int, face_coords=(1, 2), region="all") -> dict:
    census = subspace_census(f, x)
    hist = face_histogram(f, face_coords, region)
    out = census.to_dict()
    out["histogram"] = {str(k): v for k, v in hist.as_dict().items()}
    out["region"] = hist.region
    return out
