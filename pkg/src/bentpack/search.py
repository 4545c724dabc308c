"""Corpora of bent and plateaued functions: exhaustive sweeps and constructions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .boolfn import BooleanFunction, _butterfly_add, classify_plateau, restrict_to_hyperplane, walsh_transform
from .errors import NotBijective, ParityMismatch, TooLarge

MAX_SWEEP_N = 4


@dataclass
class Corpus:
    n: int
    s: int
    functions: list[BooleanFunction]
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)


def _hadamard(n: int) -> np.ndarray:
    return _butterfly_add(np.eye(1 << n, dtype=np.int64), n).reshape(1 << n, 1 << n)


def sweep_tables(n: int, chunk: int = 1 << 14):
    """Yield (start, bits) blocks covering every truth table in integer order."""
    size = 1 << n
    count = 1 << size
    shifts = np.arange(size - 1, -1, -1, dtype=np.int64)
    for start in range(0, count, chunk):
        ints = np.arange(start, min(start + chunk, count), dtype=np.int64)
        yield start, ((ints[:, None] >> shifts) & 1).astype(np.uint8)


def enumerate_plateaued(n: int, s: int) -> Corpus:
    """All s-plateaued functions of n <= 4 variables, in truth-table integer order."""
    if n > MAX_SWEEP_N:
        raise TooLarge(f"exhaustive sweep is limited to n <= {MAX_SWEEP_N}")
    if (n + s) % 2 or not 0 <= s <= n:
        raise ParityMismatch("n + s must be even and 0 <= s <= n")
    H = _hadamard(n)
    peak = 1 << ((n + s) // 2)
    support = 1 << (n - s)
    found = []
    for _, bits in sweep_tables(n):
        mags = np.abs((1 - 2 * bits.astype(np.int64)) @ H)
        ok = np.all((mags == 0) | (mags == peak), axis=1) & ((mags != 0).sum(axis=1) == support)
        found.extend(BooleanFunction(n, row) for row in bits[ok])
    return Corpus(n, s, found, {"kind": "exhaustive"})


def maiorana_mcfarland(m: int, h: BooleanFunction | None, perm) -> BooleanFunction:
    """f(x, y) = <x, perm(y)> + h(y) with x = (x_1..x_m), y = (x_{m+1}..x_{2m})."""
    perm = np.asarray(perm, dtype=np.int64)
    size = 1 << m
    if perm.shape != (size,) or not np.array_equal(np.sort(perm), np.arange(size)):
        raise NotBijective("perm must be a permutation of range(2**m)")
    hv = np.zeros(size, dtype=np.int64) if h is None else h.table.astype(np.int64)
    x = np.arange(size, dtype=np.int64)[:, None]
    dot = x & perm[None, :]
    par = np.zeros_like(dot)
    for b in range(m):
        par ^= (dot >> b) & 1
    return BooleanFunction(2 * m, (par ^ hv[None, :]).reshape(-1))


def random_maiorana_mcfarland(m: int, seed: int) -> BooleanFunction:
    rng = np.random.default_rng(seed)
    perm = rng.permutation(1 << m)
    h = BooleanFunction(m, rng.integers(0, 2, size=1 << m))
    return maiorana_mcfarland(m, h, perm)


def maiorana_mcfarland_corpus(m: int, count: int, seed: int = 1) -> Corpus:
    seeds = np.random.default_rng(seed).integers(0, 2**31, size=count)
    funcs = [random_maiorana_mcfarland(m, int(sd)) for sd in seeds]
    return Corpus(2 * m, 0, funcs, {"kind": "constructed", "name": "maiorana-mcfarland", "m": m, "seed": seed})


def restriction_corpus(corpus: Corpus, coordinate: int = 1) -> Corpus:
    """Hyperplane restrictions x_i = 0 of a bent corpus (1-plateaued)."""
    funcs = [restrict_to_hyperplane(f, coordinate) for f in corpus]
    prov = {"kind": "constructed", "name": "hyperplane-restriction", "coordinate": coordinate,
            "parent": corpus.provenance}
    return Corpus(corpus.n - 1, 1, funcs, prov)


def triple_convolution_check(f: BooleanFunction, s: int) -> bool:
    """Whether (-1)^f * (-1)^f * (-1)^f == 2^(n+s) (-1)^f, via the cubed spectrum."""
    n = f.n
    if (n + s) % 2:
        raise ParityMismatch("n + s must be even")
    W = walsh_transform(f).values
    dtype = np.int64 if 4 * n < 62 else object
    cubed = W.astype(dtype) ** 3
    conv = _butterfly_add(cubed, n)
    # inverse transform carries a 1/2^n factor: compare 2^n * conv3 with 2^n * rhs
    rhs = f.signs().astype(dtype) * (1 << (n + s)) * (1 << n)
    return bool(np.all(conv == rhs))


def is_plateaued_order(f: BooleanFunction, s: int) -> bool:
    return classify_plateau(f).s == s
