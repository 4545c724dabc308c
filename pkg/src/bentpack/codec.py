"""Lossless storage of plateaued and bent functions.

Plateaued-direct mode (``MODE_PLATEAUED``) stores an EA-normalised
representative g of f:

* the affine transform and the chosen pair of face coordinates {i, j};
* W_g restricted to the (n-2)-dimensional face Gamma = {y : y_i = y_j = 0},
  as a support size, the enumerative rank of the support and one sign bit
  per support point;
* for every translate of the 2-face span{e_i, e_j} whose base point has
  weight <= r, the bits needed to recover its four values from the face
  sum (which the decoder gets from the restricted spectrum): nothing for
  sums of +-4, a 2-bit position for +-2, a base-6 digit for 0.

The covered translates contain the ball B_{n,r}, and deg g <= r, so the
decoder finishes by Moebius reconstruction from the ball.

Bent-dual mode (``MODE_BENT_DUAL``) stores the restriction of the dual
bent function to a coordinate hyperplane x_k = 0 (a 1-plateaued function,
coded as above) plus one bit per zero-sum pair {x, x + e_k} inside a
ball of radius n/2 around a chosen centre.

Stream layout: ``b"BPC1"``, n, s, mode (one byte each), then each
section as a 32-bit big-endian bit count followed by its bits padded
to a byte boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .affine import AffineTransform, BinaryMatrix, apply_affine, default_radius, invert_transform, normalize_ea
from .bits import BitReader, BitWriter, bits_to_bytes, bytes_to_bits
from .boolfn import (
    BooleanFunction,
    SubspacePair,
    ball_indices,
    classify_plateau,
    coord_mask,
    coset_sums_from_restricted_spectrum,
    dual_bent,
    fwht,
    mobius_transform,
    restrict_spectrum,
    restrict_to_hyperplane,
    walsh_transform,
    weights,
)
from .errors import (
    DomainError,
    IndexOutOfRange,
    MalformedStream,
    NotBent,
    NotPlateaued,
    NotPlateauedOnFace,
    SingularMatrix,
    SumMismatch,
    UnsupportedSize,
)
from .stats import face_members, face_values

MAGIC = b"BPC1"
MODE_PLATEAUED = 0
MODE_BENT_DUAL = 1
MODE_NAMES = {MODE_PLATEAUED: "plateaued-direct", MODE_BENT_DUAL: "bent-dual"}
HEADER_BITS = 8 * len(MAGIC) + 24
SECTIONS = {
    MODE_PLATEAUED: ("transform", "spectrum", "faces"),
    MODE_BENT_DUAL: ("transform", "spectrum", "faces", "pairs"),
}


# ---------------------------------------------------------------- subsets

def rank_subset(universe_size: int, subset) -> int:
    """Lexicographic rank of a strictly increasing k-subset of range(N)."""
    N = int(universe_size)
    sub = [int(c) for c in subset]
    k = len(sub)
    prev = -1
    for c in sub:
        if c <= prev or c >= N:
            raise IndexOutOfRange(f"subset must be strictly increasing within 0..{N - 1}")
        prev = c
    total = math.comb(N, k)
    return total - 1 - sum(math.comb(N - 1 - c, k - i) for i, c in enumerate(sub))


def unrank_subset(universe_size: int, k: int, rank: int) -> list[int]:
    N = int(universe_size)
    total = math.comb(N, k)
    if not 0 <= rank < total:
        raise IndexOutOfRange(f"rank {rank} outside [0, C({N},{k}))")
    m = total - 1 - rank
    out = []
    hi = N - 1
    for i in range(k):
        t = k - i
        lo = t - 1
        # largest d in [lo, hi] with C(d, t) <= m
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if math.comb(mid, t) <= m:
                lo = mid
            else:
                hi = mid - 1
        m -= math.comb(lo, t)
        out.append(N - 1 - lo)
        hi = lo - 1
    return out


def subset_field_widths(universe_size: int, k: int) -> tuple[int, int]:
    """(count width, rank width) used when storing a k-subset."""
    return universe_size.bit_length(), (math.comb(universe_size, k) - 1).bit_length()


# ---------------------------------------------------------------- spectrum part

def _gamma(n: int, face_coords) -> SubspacePair:
    return SubspacePair(tuple(c for c in range(1, n + 1) if c not in face_coords))


def encode_spectrum_restriction(W, face_coords, s: int) -> str:
    """Support size, support rank and signs of W on Gamma = {y_i = y_j = 0}."""
    n = W.n
    restricted = restrict_spectrum(W, _gamma(n, face_coords))
    peak = 1 << ((n + s) // 2)
    if (n + s) % 2 or not np.all((restricted == 0) | (np.abs(restricted) == peak)):
        raise NotPlateauedOnFace(f"restricted spectrum is not in {{0, +-{peak}}}")
    N = restricted.size
    support = np.flatnonzero(restricted)
    count_w, rank_w = subset_field_widths(N, support.size)
    out = BitWriter()
    out.write(support.size, count_w)
    out.write(rank_subset(N, support), rank_w)
    out.write_bits(restricted[support] < 0)
    return out.getvalue()


def decode_spectrum_restriction(reader: BitReader, n: int, s: int) -> np.ndarray:
    N = 1 << (n - 2)
    k = reader.read(N.bit_length())
    if k > N:
        raise MalformedStream("support size exceeds face size")
    rank = reader.read(subset_field_widths(N, k)[1])
    try:
        support = unrank_subset(N, k, rank)
    except IndexOutOfRange as exc:
        raise MalformedStream(str(exc)) from exc
    signs = np.array(reader.read_bits(k), dtype=np.int64)
    restricted = np.zeros(N, dtype=np.int64)
    restricted[support] = (1 - 2 * signs) << ((n + s) // 2)
    return restricted


# ---------------------------------------------------------------- face part

# position pairs of the two ones in a zero-sum face, in lexicographic rank order
_PAIRS = list(combinations(range(4), 2))


def _face_counts(sums: np.ndarray) -> tuple[int, int]:
    odd = int(np.count_nonzero(np.abs(sums) == 2))
    zero = int(np.count_nonzero(sums == 0))
    return odd, zero


def base6_width(m: int) -> int:
    """ceil(m * log2 6), computed exactly."""
    return (6 ** m - 1).bit_length() if m else 0


def encode_faces(values: np.ndarray, sums: np.ndarray) -> str:
    """Disambiguation bits for faces whose signed sums are known.

    ``values`` has one row of four bits per face, ``sums`` the matching
    sums of (-1)^value.
    """
    values = np.asarray(values, dtype=np.int64).reshape(-1, 4)
    sums = np.asarray(sums, dtype=np.int64)
    if not np.all(np.isin(sums, (-4, -2, 0, 2, 4))):
        raise SumMismatch("face sums must lie in {0, +-2, +-4}")
    if not np.array_equal(4 - 2 * values.sum(axis=1), sums):
        raise SumMismatch("face values disagree with their sums")
    out = BitWriter()
    digits = []
    for row, sm in zip(values, sums):
        if sm == 2:
            out.write(int(np.flatnonzero(row == 1)[0]), 2)
        elif sm == -2:
            out.write(int(np.flatnonzero(row == 0)[0]), 2)
        elif sm == 0:
            digits.append(rank_subset(4, np.flatnonzero(row == 1)))
    packed = 0
    for d in digits:
        packed = packed * 6 + d
    out.write(packed, base6_width(len(digits)))
    return out.getvalue()


def decode_faces(reader: BitReader, sums: np.ndarray) -> np.ndarray:
    sums = np.asarray(sums, dtype=np.int64)
    if not np.all(np.isin(sums, (-4, -2, 0, 2, 4))):
        raise SumMismatch("face sums must lie in {0, +-2, +-4}")
    values = np.zeros((sums.size, 4), dtype=np.uint8)
    values[sums == -4] = 1
    zero_rows = []
    for idx, sm in enumerate(sums):
        if sm == 2:
            values[idx, reader.read(2)] = 1
        elif sm == -2:
            values[idx] = 1
            values[idx, reader.read(2)] = 0
        elif sm == 0:
            zero_rows.append(idx)
    packed = reader.read(base6_width(len(zero_rows)))
    if packed >= 6 ** len(zero_rows):
        raise MalformedStream("base-6 block out of range")
    for idx in reversed(zero_rows):
        packed, d = divmod(packed, 6)
        values[idx, list(_PAIRS[d])] = 1
    return values


# ---------------------------------------------------------------- ball reconstruction

@dataclass(frozen=True)
class BallValues:
    """Values on B_{n,r}, ordered by weight then index."""

    n: int
    r: int
    values: np.ndarray

    def __post_init__(self):
        size = ball_indices(self.n, self.r).size
        if np.asarray(self.values).size != size:
            raise ValueError(f"expected {size} ball values, got {np.asarray(self.values).size}")


def ball_values(f: BooleanFunction, r: int) -> BallValues:
    return BallValues(f.n, r, f.table[ball_indices(f.n, r)].copy())


def reconstruct_from_ball(bv: BallValues, n: int | None = None, r: int | None = None) -> BooleanFunction:
    """The unique function of degree <= r with the given ball values."""
    n = bv.n if n is None else n
    r = bv.r if r is None else r
    partial = np.zeros(1 << n, dtype=np.uint8)
    partial[ball_indices(n, r)] = bv.values
    # coefficients of weight <= r only involve points of the ball
    coeffs = mobius_transform(partial)
    coeffs[weights(n) > r] = 0
    return BooleanFunction(n, mobius_transform(coeffs))


# ---------------------------------------------------------------- transforms

def _coord_width(n: int) -> int:
    return (n - 1).bit_length()


def write_transform(out: BitWriter, T: AffineTransform, face_coords) -> None:
    n = T.n
    out.write_bits(T.A.rows.reshape(-1))
    out.write(T.b, n)
    out.write(T.c, n)
    out.write(T.d, 1)
    for c in face_coords:
        out.write(c - 1, _coord_width(n))


def read_transform(reader: BitReader, n: int) -> tuple[AffineTransform, tuple[int, int]]:
    A = np.array(reader.read_bits(n * n), dtype=np.uint8).reshape(n, n)
    b, c, d = reader.read(n), reader.read(n), reader.read(1)
    i, j = (reader.read(_coord_width(n)) + 1 for _ in range(2))
    if not 1 <= i < j <= n:
        raise MalformedStream("bad face coordinates")
    M = BinaryMatrix(A)
    if not M.is_invertible():
        raise MalformedStream("stored matrix is singular")
    return AffineTransform(M, b, c, d), (i, j)


# ---------------------------------------------------------------- stream container

@dataclass
class CodecBitstream:
    n: int
    s: int
    mode: int
    sections: dict[str, str] = field(default_factory=dict)

    def section_bits(self) -> dict[str, int]:
        return {name: len(self.sections.get(name, "")) for name in SECTIONS[self.mode]}

    @property
    def total_bits(self) -> int:
        return HEADER_BITS + sum(self.section_bits().values())

    def to_bytes(self) -> bytes:
        chunks = [MAGIC, bytes([self.n, self.s, self.mode])]
        for name in SECTIONS[self.mode]:
            bits = self.sections[name]
            chunks.append(len(bits).to_bytes(4, "big"))
            chunks.append(bits_to_bytes(bits))
        return b"".join(chunks)

    @classmethod
    def from_bytes(cls, data: bytes) -> "CodecBitstream":
        data = bytes(data)
        if len(data) < 7 or data[:4] != MAGIC:
            raise MalformedStream("missing BPC1 magic")
        n, s, mode = data[4], data[5], data[6]
        if mode not in SECTIONS:
            raise MalformedStream(f"unknown mode {mode}")
        if not 2 <= n <= 24 or s > n or (n + s) % 2:
            raise MalformedStream(f"invalid header n={n} s={s}")
        pos = 7
        sections = {}
        for name in SECTIONS[mode]:
            if pos + 4 > len(data):
                raise MalformedStream(f"truncated before section {name!r}")
            nbits = int.from_bytes(data[pos:pos + 4], "big")
            pos += 4
            nbytes = (nbits + 7) // 8
            if pos + nbytes > len(data):
                raise MalformedStream(f"section {name!r} truncated")
            sections[name] = bytes_to_bits(data[pos:pos + nbytes], nbits)
            pos += nbytes
        if pos != len(data):
            raise MalformedStream("trailing bytes after last section")
        return cls(n, s, mode, sections)


def _as_stream(data) -> CodecBitstream:
    return data if isinstance(data, CodecBitstream) else CodecBitstream.from_bytes(data)


# ---------------------------------------------------------------- plateaued-direct

@dataclass
class _Candidate:
    sections: dict[str, str]
    total: int


def _plateaued_sections(f: BooleanFunction, s: int, seed: int, face) -> dict[str, str]:
    n = f.n
    r = default_radius(n, s)
    g, cert = normalize_ea(f, s, r, seed, face)
    W = walsh_transform(g)
    spec_bits = encode_spectrum_restriction(W, face, s)
    restricted = restrict_spectrum(W, _gamma(n, face))
    sums = coset_sums_from_restricted_spectrum(restricted, n - 2)
    region = weights(n - 2) <= r
    face_bits = encode_faces(face_values(g, face)[region], sums[region])
    out = BitWriter()
    write_transform(out, cert.transform, face)
    return {"transform": out.getvalue(), "spectrum": spec_bits, "faces": face_bits}


def _best_plateaued(f: BooleanFunction, s: int, seed: int) -> dict[str, str]:
    if f.n < 2:
        raise UnsupportedSize("plateaued coding needs n >= 2")
    best = None
    for face in combinations(range(1, f.n + 1), 2):
        sections = _plateaued_sections(f, s, seed, face)
        total = sum(len(v) for v in sections.values())
        if best is None or total < best.total:
            best = _Candidate(sections, total)
    return best.sections


def encode_plateaued(f: BooleanFunction, seed: int = 1) -> CodecBitstream:
    cls = classify_plateau(f)
    if not cls.plateaued:
        raise NotPlateaued("encode_plateaued expects a plateaued function")
    return CodecBitstream(f.n, cls.s, MODE_PLATEAUED, _best_plateaued(f, cls.s, seed))


@dataclass
class PlateauedParse:
    transform: AffineTransform
    face: tuple[int, int]
    restricted: np.ndarray
    sums: np.ndarray
    region: np.ndarray
    face_values: np.ndarray
    g: BooleanFunction
    f: BooleanFunction


def _decode_plateaued_sections(sections: dict[str, str], n: int, s: int) -> PlateauedParse:
    r = default_radius(n, s)
    rd = BitReader(sections["transform"])
    T, face = read_transform(rd, n)
    rd.expect_end()

    rd = BitReader(sections["spectrum"])
    restricted = decode_spectrum_restriction(rd, n, s)
    rd.expect_end()
    try:
        sums = coset_sums_from_restricted_spectrum(restricted, n - 2)
    except DomainError as exc:
        raise MalformedStream(f"spectrum part is inconsistent: {exc}") from exc

    region = weights(n - 2) <= r
    rd = BitReader(sections["faces"])
    try:
        vals = decode_faces(rd, sums[region])
    except SumMismatch as exc:
        raise MalformedStream(f"spectrum part yields impossible face sums: {exc}") from exc
    rd.expect_end()

    members = face_members(n, face)[region]
    known = np.full(1 << n, 255, dtype=np.uint8)
    known[members.reshape(-1)] = vals.reshape(-1)
    ball = ball_indices(n, r)
    if np.any(known[ball] == 255):
        raise MalformedStream("face region does not cover the ball")
    g = reconstruct_from_ball(BallValues(n, r, known[ball]))

    # checksum: the reconstruction must reproduce every decoded value and the spectrum part
    if not np.array_equal(g.table[members.reshape(-1)], vals.reshape(-1)):
        raise MalformedStream("decoded faces are not consistent with a degree-bounded function")
    Wg = walsh_transform(g)
    if classify_plateau(g).s != s or not np.array_equal(restrict_spectrum(Wg, _gamma(n, face)), restricted):
        raise MalformedStream("reconstructed function does not match the spectrum part")
    f = apply_affine(g, invert_transform(T))
    return PlateauedParse(T, face, restricted, sums, region, vals, g, f)


# ---------------------------------------------------------------- bent-dual

def _pair_sums(h: BooleanFunction, n: int) -> np.ndarray:
    """Sums (-1)^f(x) + (-1)^f(x + e_k) for x in the hyperplane, from the restricted dual."""
    restricted = h.signs() << (n // 2)  # W_f on the hyperplane
    return coset_sums_from_restricted_spectrum(restricted, n - 1)


def _ball_zero_counts(zero: np.ndarray, m: int, radius: int) -> np.ndarray:
    """For each centre e, the number of zero-sum representatives in e + B_{m,radius}."""
    ball = (weights(m) <= radius).astype(np.int64)
    return fwht(fwht(zero.astype(np.int64)) * fwht(ball)) >> m


def _pair_section(f: BooleanFunction, k: int, h: BooleanFunction) -> str:
    n = f.n
    m = n - 1
    sums = _pair_sums(h, n)
    zero = sums == 0
    centre = int(np.argmin(_ball_zero_counts(zero, m, n // 2)))
    reps = centre ^ ball_indices(m, n // 2)
    chosen = reps[zero[reps]]
    full = _gamma(n, (k,)).members(n)
    out = BitWriter()
    out.write(k - 1, _coord_width(n))
    out.write(centre, m)
    out.write_bits(f.table[full[chosen]])
    return out.getvalue()


def encode_bent_dual(f: BooleanFunction, seed: int = 1) -> CodecBitstream:
    n = f.n
    if n % 2 or not classify_plateau(f).bent:
        raise NotBent("encode_bent_dual expects a bent function")
    if n < 4:
        raise UnsupportedSize("bent-dual coding needs n >= 4")
    g = dual_bent(f)
    best = None
    for k in range(1, n + 1):
        h = restrict_to_hyperplane(g, k)
        sections = dict(_best_plateaued(h, 1, seed))
        sections["pairs"] = _pair_section(f, k, h)
        total = sum(len(v) for v in sections.values())
        if best is None or total < best.total:
            best = _Candidate(sections, total)
    return CodecBitstream(n, 0, MODE_BENT_DUAL, best.sections)


@dataclass
class BentDualParse:
    inner: PlateauedParse
    direction: int
    centre: int
    pair_sums: np.ndarray
    pair_bits: int
    f: BooleanFunction


def _decode_bent_dual_sections(sections: dict[str, str], n: int) -> BentDualParse:
    m = n - 1
    inner = _decode_plateaued_sections(sections, m, 1)
    h = inner.f
    rd = BitReader(sections["pairs"])
    k = rd.read(_coord_width(n)) + 1
    if k > n:
        raise MalformedStream("bad hyperplane direction")
    centre = rd.read(m)
    try:
        sums = _pair_sums(h, n)
    except DomainError as exc:
        raise MalformedStream(str(exc)) from exc
    if not np.all(np.isin(sums, (-2, 0, 2))):
        raise MalformedStream("pair sums outside {0, +-2}")
    reps = centre ^ ball_indices(m, n // 2)
    full = _gamma(n, (k,)).members(n)
    mk = coord_mask(n, k)
    rep_sums = sums[reps]
    zero = rep_sums == 0
    chosen_bits = np.array(rd.read_bits(int(zero.sum())), dtype=np.uint8)
    rd.expect_end()

    low = np.where(rep_sums > 0, 0, 1).astype(np.uint8)
    low[zero] = chosen_bits
    known = np.full(1 << n, 255, dtype=np.uint8)
    x0 = full[reps]
    known[x0] = low
    known[x0 | mk] = np.where(zero, 1 - low, low)

    shift = int(full[centre])
    ball = ball_indices(n, n // 2)
    shifted = known[ball ^ shift]
    if np.any(shifted == 255):
        raise MalformedStream("pair region does not cover the ball")
    fe = reconstruct_from_ball(BallValues(n, n // 2, shifted))
    f = BooleanFunction(n, fe.table[np.arange(1 << n) ^ shift])

    covered = known != 255
    if not np.array_equal(f.table[covered], known[covered]):
        raise MalformedStream("pair values are not consistent with a degree-bounded function")
    try:
        ok = restrict_to_hyperplane(dual_bent(f), k) == h
    except NotBent:
        ok = False
    if not ok:
        raise MalformedStream("reconstructed function does not match the stored dual restriction")
    return BentDualParse(inner, k, centre, sums, int(zero.sum()), f)


# ---------------------------------------------------------------- public decode / reports

def parse(data) -> PlateauedParse | BentDualParse:
    stream = _as_stream(data)
    try:
        if stream.mode == MODE_PLATEAUED:
            return _decode_plateaued_sections(stream.sections, stream.n, stream.s)
        if stream.s != 0:
            raise MalformedStream("bent-dual stream must have s=0")
        return _decode_bent_dual_sections(stream.sections, stream.n)
    except (SingularMatrix, IndexOutOfRange, SumMismatch) as exc:
        raise MalformedStream(str(exc)) from exc


def decode(data) -> BooleanFunction:
    return parse(data).f


decode_plateaued = decode
decode_bent_dual = decode


def encode(f: BooleanFunction, mode: str = "plateaued", seed: int = 1) -> CodecBitstream:
    if mode in ("plateaued", "plateaued-direct"):
        return encode_plateaued(f, seed)
    if mode in ("bent-dual", "dual"):
        return encode_bent_dual(f, seed)
    raise ValueError(f"unknown mode {mode!r}")


def bitstream_length_report(data) -> dict:
    """Bits per section (before byte padding) and totals."""
    raw = data.to_bytes() if isinstance(data, CodecBitstream) else bytes(data)
    stream = CodecBitstream.from_bytes(raw)
    report = {"mode": MODE_NAMES[stream.mode], "n": stream.n, "s": stream.s, "header": HEADER_BITS}
    report.update({name: 0 for name in ("transform", "spectrum", "faces", "pairs")})
    report.update(stream.section_bits())
    report["payload"] = report["spectrum"] + report["faces"] + report["pairs"]
    report["total"] = stream.total_bits
    report["stored_bits"] = 8 * len(raw)
    return report


def stream_accounting(data) -> dict:
    """Quantities the section lengths are determined by, recovered by parsing."""
    stream = _as_stream(data)
    p = parse(stream)
    inner = p.inner if isinstance(p, BentDualParse) else p
    n_in = stream.n - 1 if isinstance(p, BentDualParse) else stream.n
    N = 1 << (n_in - 2)
    k = int(np.count_nonzero(inner.restricted))
    odd, zero = _face_counts(inner.sums[inner.region])
    out = {
        "n": n_in,
        "N": N,
        "k": k,
        "count_width": N.bit_length(),
        "rank_width": subset_field_widths(N, k)[1],
        "odd_faces": odd,
        "zero_faces": zero,
        "region_faces": int(inner.region.sum()),
        "transform_bits": n_in * n_in + 2 * n_in + 1 + 2 * _coord_width(n_in),
    }
    if isinstance(p, BentDualParse):
        out["pair_bits"] = p.pair_bits
        out["pair_header_bits"] = _coord_width(stream.n) + (stream.n - 1)
        out["ball_pairs"] = int(ball_indices(stream.n - 1, stream.n // 2).size)
    return out
