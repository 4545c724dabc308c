"""Truth tables, Walsh-Hadamard and Moebius transforms, plateau classification.

Index convention: the input vector (x_1, ..., x_n) maps to the integer
whose most significant bit is x_1, so coordinate ``i`` (1-based) is the
bit ``1 << (n - i)``.  Reshaping a table to ``[2] * n`` therefore puts
x_1 on axis 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadCoordinate,
    DimensionMismatch,
    NotBent,
    NotBooleanSpectrum,
    ZeroDirection,
)

MAX_N = 24


def coord_mask(n: int, i: int) -> int:
    """Bit mask of 1-based coordinate ``i`` in an ``n``-bit index."""
    if not 1 <= i <= n:
        raise BadCoordinate(f"coordinate {i} out of range 1..{n}")
    return 1 << (n - i)


def weights(n: int) -> np.ndarray:
    """Hamming weight of every index 0..2**n - 1."""
    idx = np.arange(1 << n, dtype=np.int64)
    w = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        w += (idx >> b) & 1
    return w


def ball_indices(n: int, r: int) -> np.ndarray:
    """Points of the Hamming ball B_{n,r}, ordered by weight then index."""
    w = weights(n)
    idx = np.flatnonzero(w <= r)
    return idx[np.argsort(w[idx], kind="stable")]


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise DimensionMismatch(f"n must be an integer in 1..{MAX_N}, got {n!r}")


class BooleanFunction:
    """Immutable truth table of a function F_2^n -> F_2."""

    __slots__ = ("n", "table")

    def __init__(self, n: int, table: Iterable[int]):
        _check_n(n)
        arr = np.array(table, dtype=np.uint8).reshape(-1)
        if arr.size != 1 << n:
            raise DimensionMismatch(f"table length {arr.size} != 2**{n}")
        if arr.size and arr.max() > 1:
            raise ValueError("truth table entries must be 0 or 1")
        arr.setflags(write=False)
        self.n = int(n)
        self.table = arr

    @classmethod
    def from_string(cls, bits: str) -> "BooleanFunction":
        bits = bits.strip()
        if set(bits) - {"0", "1"}:
            raise ValueError("truth table string may only contain 0 and 1")
        size = len(bits)
        if size < 2 or size & (size - 1):
            raise DimensionMismatch(f"table length {size} is not a power of two >= 2")
        arr = np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0")
        return cls(size.bit_length() - 1, arr)

    @classmethod
    def from_int(cls, value: int, n: int) -> "BooleanFunction":
        """Inverse of :meth:`to_int`: f(0) is the most significant bit."""
        return cls.from_string(format(value, f"0{1 << n}b"))

    @classmethod
    def from_anf(cls, n: int, monomials: Iterable[Sequence[int]]) -> "BooleanFunction":
        """Build from monomials given as tuples of 1-based coordinates; () is the constant 1."""
        coeffs = np.zeros(1 << n, dtype=np.uint8)
        for mono in monomials:
            y = 0
            for i in mono:
                y |= coord_mask(n, i)
            coeffs[y] ^= 1
        return cls(n, mobius_transform(coeffs))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "BooleanFunction":
        return cls(n, np.full(1 << n, value, dtype=np.uint8))

    def to_string(self) -> str:
        return (self.table + ord("0")).tobytes().decode()

    def to_int(self) -> int:
        return int(self.to_string(), 2)

    def signs(self) -> np.ndarray:
        """(-1)^f as an int64 array."""
        return 1 - 2 * self.table.astype(np.int64)

    def weight(self) -> int:
        return int(self.table.sum())

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 6:
            return f"BooleanFunction(n={self.n}, '{self.to_string()}')"
        return f"BooleanFunction(n={self.n}, weight={self.weight()})"


class WalshSpectrum:
    """The 2**n values W_f(y), indexed like truth tables."""

    __slots__ = ("n", "values")

    def __init__(self, n: int, values: Iterable[int]):
        _check_n(n)
        arr = np.array(values, dtype=np.int32).reshape(-1)
        if arr.size != 1 << n:
            raise DimensionMismatch(f"spectrum length {arr.size} != 2**{n}")
        arr.setflags(write=False)
        self.n = int(n)
        self.values = arr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.n, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"WalshSpectrum(n={self.n}, values={self.values.tolist() if self.n <= 5 else '...'})"


@dataclass(frozen=True)
class AnfPolynomial:
    n: int
    coeffs: np.ndarray
    degree: int

    def monomials(self) -> list[tuple[int, ...]]:
        out = []
        for y in np.flatnonzero(self.coeffs):
            out.append(tuple(i for i in range(1, self.n + 1) if int(y) & (1 << (self.n - i))))
        return out

    def __str__(self) -> str:
        terms = ["".join(f"x{i}" for i in mono) or "1" for mono in self.monomials()]
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class PlateauClass:
    """``s`` is the plateau order, or None for functions that are not plateaued."""

    s: int | None

    @property
    def plateaued(self) -> bool:
        return self.s is not None

    @property
    def bent(self) -> bool:
        return self.s == 0

    def __str__(self) -> str:
        if self.s is None:
            return "not plateaued"
        if self.s == 0:
            return "bent (s=0)"
        return f"{self.s}-plateaued"


NOT_PLATEAUED = PlateauClass(None)


@dataclass(frozen=True)
class SubspacePair:
    """Coordinate subspace Gamma (coordinates free in Gamma) and its dual.

    Gamma^perp is spanned by the complementary coordinate vectors.
    """

    gamma_coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(sorted(set(int(c) for c in self.gamma_coords)))
        object.__setattr__(self, "gamma_coords", coords)

    @property
    def dim(self) -> int:
        return len(self.gamma_coords)

    def perp_coords(self, n: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, n + 1) if i not in self.gamma_coords)

    def validate(self, n: int) -> None:
        for c in self.gamma_coords:
            coord_mask(n, c)

    def members(self, n: int) -> np.ndarray:
        """Full n-bit indices of Gamma, in the order of the compressed index."""
        self.validate(n)
        t = np.arange(1 << self.dim, dtype=np.int64)
        idx = np.zeros_like(t)
        for k, c in enumerate(self.gamma_coords):
            idx |= ((t >> (self.dim - 1 - k)) & 1) * coord_mask(n, c)
        return idx


def _butterfly_add(a: np.ndarray, n: int) -> np.ndarray:
    h = 1
    for _ in range(n):
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0, :] + a[:, 1, :], a[:, 0, :] - a[:, 1, :]), axis=1)
        h *= 2
    return a.reshape(-1)


def fwht(values: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform of a length-2**k real array."""
    values = np.asarray(values)
    size = values.size
    if size & (size - 1):
        raise DimensionMismatch("length must be a power of two")
    return _butterfly_add(values.copy(), size.bit_length() - 1)


def walsh_transform(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.n, _butterfly_add(f.signs(), f.n))


def inverse_walsh(W: WalshSpectrum) -> BooleanFunction:
    back = _butterfly_add(W.values.astype(np.int64), W.n)
    full = 1 << W.n
    if not np.all(np.abs(back) == full):
        raise NotBooleanSpectrum("inverse transform is not +-2**n everywhere")
    return BooleanFunction(W.n, (back < 0).astype(np.uint8))


def mobius_transform(bits) -> np.ndarray:
    """Binary Moebius transform; the same map goes table -> ANF and ANF -> table."""
    a = np.array(bits, dtype=np.uint8).reshape(-1)
    size = a.size
    if size == 0 or size & (size - 1):
        raise DimensionMismatch("length must be a power of two")
    h = 1
    while h < size:
        v = a.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h *= 2
    return a


def anf(f: BooleanFunction) -> AnfPolynomial:
    coeffs = mobius_transform(f.table)
    coeffs.setflags(write=False)
    support = np.flatnonzero(coeffs)
    degree = int(weights(f.n)[support].max()) if support.size else 0
    return AnfPolynomial(f.n, coeffs, degree)


def algebraic_degree(f: BooleanFunction) -> int:
    return anf(f).degree


def classify_spectrum(W: WalshSpectrum) -> PlateauClass:
    n = W.n
    mags = np.abs(W.values.astype(np.int64))
    peak = int(mags.max())
    # peak == 2**((n + s) / 2)
    if peak & (peak - 1):
        return NOT_PLATEAUED
    s = 2 * (peak.bit_length() - 1) - n
    if s < 0 or s > n:
        return NOT_PLATEAUED
    if not np.all((mags == 0) | (mags == peak)):
        return NOT_PLATEAUED
    # support fraction must be exactly 2**-s
    if int(np.count_nonzero(mags)) != 1 << (n - s):
        return NOT_PLATEAUED
    return PlateauClass(s)


def classify_plateau(f: BooleanFunction) -> PlateauClass:
    return classify_spectrum(walsh_transform(f))


def dual_bent(f: BooleanFunction) -> BooleanFunction:
    W = walsh_transform(f)
    if not classify_spectrum(W).bent:
        raise NotBent("function is not bent")
    return BooleanFunction(f.n, (W.values < 0).astype(np.uint8))


def restrict_to_hyperplane(f: BooleanFunction, i: int) -> BooleanFunction:
    """Fix coordinate ``i`` to 0; the other coordinates keep their order."""
    if f.n < 2:
        raise BadCoordinate("restriction needs n >= 2")
    coord_mask(f.n, i)
    cube = f.table.reshape([2] * f.n)
    return BooleanFunction(f.n - 1, np.take(cube, 0, axis=i - 1).reshape(-1))


def derivative(f: BooleanFunction, a: int) -> BooleanFunction:
    a = int(a)
    if a == 0:
        raise ZeroDirection("derivative direction must be nonzero")
    if not 0 < a < 1 << f.n:
        raise BadCoordinate(f"direction {a} is not an {f.n}-bit vector")
    idx = np.arange(1 << f.n) ^ a
    return BooleanFunction(f.n, f.table ^ f.table[idx])


def _gamma_first(arr: np.ndarray, n: int, gamma: SubspacePair) -> np.ndarray:
    """Reshape to (|Gamma|, |Gamma^perp|) with both axes in compressed order."""
    axes = [c - 1 for c in gamma.gamma_coords]
    cube = np.moveaxis(arr.reshape([2] * n), axes, list(range(len(axes))))
    return cube.reshape(1 << gamma.dim, -1)


def restrict_spectrum(W: WalshSpectrum, gamma: SubspacePair) -> np.ndarray:
    """W on Gamma, indexed by the compressed Gamma coordinate."""
    gamma.validate(W.n)
    return _gamma_first(W.values, W.n, gamma)[:, 0].astype(np.int64)


def coset_sums_array(f: BooleanFunction, gamma: SubspacePair) -> np.ndarray:
    """Direct sums of (-1)^f over a + Gamma^perp, a indexed in compressed Gamma order."""
    gamma.validate(f.n)
    return _gamma_first(f.signs(), f.n, gamma).sum(axis=1)


def coset_sums_from_restricted_spectrum(restricted: np.ndarray, dim: int) -> np.ndarray:
    """Coset sums recovered from W restricted to a dim-dimensional Gamma."""
    total = fwht(np.asarray(restricted, dtype=np.int64))
    if np.any(total % (1 << dim)):
        raise NotBooleanSpectrum("restricted spectrum does not yield integer coset sums")
    return total >> dim


def coset_signed_sums(f: BooleanFunction, gamma: SubspacePair) -> dict[int, int]:
    """Map from coset representative a in Gamma (full n-bit index) to its signed sum."""
    sums = coset_sums_array(f, gamma)
    reps = gamma.members(f.n)
    return {int(a): int(v) for a, v in zip(reps, sums)}


def coset_signed_sums_spectral(W: WalshSpectrum, gamma: SubspacePair) -> dict[int, int]:
    sums = coset_sums_from_restricted_spectrum(restrict_spectrum(W, gamma), gamma.dim)
    reps = gamma.members(W.n)
    return {int(a): int(v) for a, v in zip(reps, sums)}
