"""Affine maps over F_2 and EA-normalisation of plateaued functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .boolfn import BooleanFunction, classify_plateau, coord_mask
from .errors import DimensionMismatch, NotPlateaued, SearchExhausted, SingularMatrix
from .stats import (
    FaceHistogram,
    _check_face,
    face_histogram,
    face_values,
    odd_face_fraction,
    region_mask,
)

MATRIX_BUDGET = 4096


def gf2_rank(rows: np.ndarray) -> int:
    m = np.array(rows, dtype=np.uint8) & 1
    nrows, ncols = m.shape
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r, col]), None)
        if pivot is None:
            continue
        m[[rank, pivot]] = m[[pivot, rank]]
        hits = np.flatnonzero(m[:, col])
        hits = hits[hits != rank]
        m[hits] ^= m[rank]
        rank += 1
    return rank


def gf2_inverse(rows: np.ndarray) -> np.ndarray:
    n = rows.shape[0]
    aug = np.concatenate([np.array(rows, dtype=np.uint8) & 1, np.eye(n, dtype=np.uint8)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col]), None)
        if pivot is None:
            raise SingularMatrix("matrix is not invertible over F_2")
        aug[[col, pivot]] = aug[[pivot, col]]
        hits = np.flatnonzero(aug[:, col])
        hits = hits[hits != col]
        aug[hits] ^= aug[col]
    return aug[:, n:].copy()


class BinaryMatrix:
    """n x n matrix over F_2. Row k gives output coordinate k+1."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        arr = np.array(rows, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise DimensionMismatch("matrix must be square and nonempty")
        if arr.max() > 1:
            raise ValueError("matrix entries must be 0 or 1")
        arr.setflags(write=False)
        self.n = arr.shape[0]
        self.rows = arr

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> "BinaryMatrix":
        return BinaryMatrix(gf2_inverse(self.rows))

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix(self.rows.T)

    def columns_as_ints(self) -> list[int]:
        n = self.n
        return [int(sum(int(self.rows[k, j]) << (n - 1 - k) for k in range(n))) for j in range(n)]

    def apply(self, x):
        """A x for an integer vector or an integer array of vectors."""
        cols = self.columns_as_ints()
        x_arr = np.asarray(x, dtype=np.int64)
        out = np.zeros_like(x_arr)
        for j, col in enumerate(cols):
            out ^= np.where((x_arr >> (self.n - 1 - j)) & 1, col, 0)
        return int(out) if out.ndim == 0 else out

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        return BinaryMatrix((self.rows.astype(np.int64) @ other.rows.astype(np.int64)) & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryMatrix):
            return NotImplemented
        return np.array_equal(self.rows, other.rows)

    def __hash__(self) -> int:
        return hash(self.rows.tobytes())

    def __repr__(self) -> str:
        return "BinaryMatrix([" + ", ".join("".join(map(str, r)) for r in self.rows) + "])"


def _parity(v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64).copy()
    out = np.zeros_like(v)
    while np.any(v):
        out ^= v & 1
        v >>= 1
    return out


@dataclass(frozen=True)
class AffineTransform:
    """x -> f(Ax + b) + <c, x> + d.  Vectors are n-bit integers, x_1 most significant."""

    A: BinaryMatrix
    b: int = 0
    c: int = 0
    d: int = 0

    @property
    def n(self) -> int:
        return self.A.n

    @classmethod
    def identity(cls, n: int) -> "AffineTransform":
        return cls(BinaryMatrix.identity(n))


def apply_affine(f: BooleanFunction, T: AffineTransform) -> BooleanFunction:
    if T.n != f.n:
        raise DimensionMismatch(f"transform is {T.n}-dimensional, function has n={f.n}")
    if not T.A.is_invertible():
        raise SingularMatrix("A is not invertible")
    idx = np.arange(1 << f.n, dtype=np.int64)
    img = T.A.apply(idx) ^ T.b
    lin = _parity(idx & T.c) ^ (T.d & 1)
    return BooleanFunction(f.n, f.table[img] ^ lin.astype(np.uint8))


def invert_transform(T: AffineTransform) -> AffineTransform:
    Ainv = T.A.inverse()
    b = Ainv.apply(T.b)
    # l(A^-1 z + A^-1 b) = <(A^-1)^T c, z> + <c, A^-1 b> + d
    c = Ainv.transpose().apply(T.c)
    d = (T.d ^ int(_parity(np.int64(T.c & b)))) & 1
    return AffineTransform(Ainv, int(b), int(c), int(d))


def matrix_stream(n: int, seed: int) -> Iterator[BinaryMatrix]:
    """Endless seeded stream of invertible matrices, by rejection sampling."""
    rng = np.random.default_rng(seed)
    while True:
        m = rng.integers(0, 2, size=(n, n), dtype=np.uint8)
        if gf2_rank(m) == n:
            yield BinaryMatrix(m)


def random_invertible_matrix(n: int, seed: int) -> BinaryMatrix:
    if n < 1:
        raise DimensionMismatch("n must be >= 1")
    return next(matrix_stream(n, seed))


def odd_fraction_limit(n: int, s: int) -> tuple[Fraction, bool]:
    """Upper limit for the odd-face fraction and whether it is strict.

    For s = 0 the limit is the mean S(x)/V over all flats, which a suitable
    linear map is guaranteed to reach (non-strictly).
    """
    if s >= 2:
        return Fraction(1, 2), True
    if s == 1:
        return Fraction(1, 2) + Fraction(1, 1 << n), True
    return Fraction(1, 2) + Fraction(1, (1 << n) - 2), False


def within_limit(value: Fraction, limit: tuple[Fraction, bool]) -> bool:
    bound, strict = limit
    return value < bound if strict else value <= bound


def default_radius(n: int, s: int) -> int:
    return min(n, -(-(n - s) // 2) + 1)


@dataclass(frozen=True)
class NormalizationCertificate:
    transform: AffineTransform
    face_coords: tuple[int, int]
    ball_radius: int
    stats: FaceHistogram
    odd_fraction: Fraction
    attempts: int = field(default=1, compare=False)

    def condition_a(self, s: int) -> bool:
        return within_limit(self.odd_fraction, odd_fraction_limit(self.transform.n, s))

    def condition_b(self) -> bool:
        return 4 * self.stats.constant >= self.stats.even


def _face_linear_types(g: BooleanFunction, face_coords, r: int) -> tuple[np.ndarray, int]:
    """Counts of even ball faces by linear part (u_i, u_j) encoded as 2*u_i + u_j."""
    vals = face_values(g, face_coords)[region_mask(g.n, r)]
    even = vals[np.bitwise_xor.reduce(vals, axis=1) == 0]
    u_i = even[:, 0] ^ even[:, 2]
    u_j = even[:, 0] ^ even[:, 1]
    return np.bincount(2 * u_i + u_j, minlength=4), len(even)


def normalize_ea(
    f: BooleanFunction,
    s: int | None = None,
    r: int | None = None,
    seed: int = 1,
    face_coords=(1, 2),
) -> tuple[BooleanFunction, NormalizationCertificate]:
    """Find an EA-equivalent g meeting the odd-face and constant-face conditions.

    Linear parts are tried identity first, then from a seeded stream of
    random invertible matrices.  Condition (b) depends only on the face
    coordinates of the affine function's linear part, so the search over
    affine functions reduces to a four-way table lookup.
    """
    cls = classify_plateau(f)
    if not cls.plateaued or (s is not None and cls.s != s):
        raise NotPlateaued(f"expected an s-plateaued function, got {cls}")
    s = cls.s
    n = f.n
    if n < 2:
        raise DimensionMismatch("normalisation needs n >= 2")
    i, j = _check_face(n, face_coords)
    r = default_radius(n, s) if r is None else int(r)
    limit = odd_fraction_limit(n, s)
    mi, mj = coord_mask(n, i), coord_mask(n, j)
    # affine functions whose linear part matches type t = 2*c_i + c_j, smallest first
    by_type = {0: 0, 1: mj, 2: mi, 3: mi | mj}

    candidates = iter(matrix_stream(n, seed))
    for attempt in range(1, MATRIX_BUDGET + 1):
        A = BinaryMatrix.identity(n) if attempt == 1 else next(candidates)
        g0 = apply_affine(f, AffineTransform(A))
        frac = odd_face_fraction(g0, (i, j))
        if not within_limit(frac, limit):
            continue
        for e in range(1 << n):
            b = A.apply(e)
            ge = apply_affine(f, AffineTransform(A, b)) if e else g0
            types, even = _face_linear_types(ge, (i, j), r)
            good = [t for t in (0, 1, 2, 3) if 4 * types[t] >= even]
            if not good:
                continue
            c = min(by_type[t] for t in good)
            T = AffineTransform(A, b, c, 0)
            g = apply_affine(f, T)
            cert = NormalizationCertificate(
                transform=T,
                face_coords=(i, j),
                ball_radius=r,
                stats=face_histogram(g, (i, j), r),
                odd_fraction=odd_face_fraction(g, (i, j)),
                attempts=attempt,
            )
            return g, cert
    raise SearchExhausted(f"no normalising transform within {MATRIX_BUDGET} matrices")
