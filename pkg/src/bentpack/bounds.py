"""Leading-term values of the counting bounds, next to known counts.

Every (1 + o(1)) factor is evaluated as 1; reports call the result the
"leading term" and make no claim about finite-n validity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import BadRadius, OutOfRange, ParityMismatch

PRECISION_BITS = 80
_prec = mpmath.workprec(PRECISION_BITS)

# log2 of |B(n)|; n = 2, 4 are exact, n = 6, 8 carry one decimal as published
with _prec:
    KNOWN_LOG2_BENT_COUNTS = {
        2: mpmath.mpf(3),
        4: mpmath.log(896, 2),
        6: mpmath.mpf("32.3"),
        8: mpmath.mpf("106.3"),
    }
KNOWN_BENT_COUNTS = {2: 8, 4: 896}


def ball_size(n: int, r: int) -> int:
    if not 0 <= r <= n:
        raise BadRadius(f"radius {r} outside 0..{n}")
    return sum(math.comb(n, i) for i in range(r + 1))


def _ball_clamped(n: int, r: int) -> int:
    return ball_size(n, min(max(r, 0), n))


@_prec
def binary_entropy(p) -> mpmath.mpf:
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise OutOfRange(f"p={p} outside [0, 1]")
    if p in (0, 1):
        return mpmath.mpf(0)
    q = mpmath.mpf(p.numerator) / p.denominator
    return -q * mpmath.log(q, 2) - (1 - q) * mpmath.log(1 - q, 2)


@_prec
def alpha() -> mpmath.mpf:
    return 1 + mpmath.mpf(3) / 8 * mpmath.log(6, 2)


@_prec
def alpha_n(n: int) -> mpmath.mpf:
    return alpha() + mpmath.mpf(2) ** (1 - n)


def degree_count_bound(n: int) -> Fraction:
    """2^(n-1) + C(n, n/2)/2: log2 of the number of functions of degree <= n/2."""
    return Fraction(1 << (n - 1)) + Fraction(math.comb(n, n // 2), 2)


@dataclass
class BoundReport:
    kind: str
    n: int
    s: int | None
    leading_term_bits: mpmath.mpf
    components: dict[str, mpmath.mpf]
    extras: dict[str, object] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    known_log2_count: mpmath.mpf | None = None
    measured_mean_bits: float | None = None

    def component_sum(self) -> mpmath.mpf:
        with _prec:
            return mpmath.fsum(self.components.values())

    def to_dict(self) -> dict:
        def num(v):
            if isinstance(v, (mpmath.mpf, Fraction)):
                return float(v)
            return v

        return {
            "kind": self.kind,
            "n": self.n,
            "s": self.s,
            "leading_term_bits": float(self.leading_term_bits),
            "components": {k: float(v) for k, v in self.components.items()},
            "extras": {k: num(v) for k, v in self.extras.items()},
            "flags": list(self.flags),
            "known_log2_count": None if self.known_log2_count is None else float(self.known_log2_count),
            "measured_mean_bits": self.measured_mean_bits,
        }


def _radius(n: int, s: int) -> int:
    return -(-(n - s) // 2) + 1


@_prec
def plateaued_bound(n: int, s: int) -> BoundReport:
    if (n + s) % 2 or not 0 <= s <= n or n < 2:
        raise ParityMismatch(f"need n >= 2, 0 <= s <= n and n + s even (n={n}, s={s})")
    r = _radius(n, s)
    b = _ball_clamped(n - 2, r)
    p = Fraction(1, 1 << s)
    faces = alpha() * b
    spectrum = mpmath.mpf(1 << (n - 2)) * (binary_entropy(p) + mpmath.mpf(p.numerator) / p.denominator)
    flags = []
    if s == 0:
        flags.append("s=0 is outside the bound's stated range (s > 0); entropy term degenerates to 2^(n-2)")
    if r > n - 2:
        flags.append(f"radius {r} exceeds n-2={n - 2}: ball is the whole face")
    return BoundReport(
        kind="plateaued",
        n=n,
        s=s,
        leading_term_bits=faces + spectrum,
        components={"faces": faces, "spectrum": spectrum},
        extras={
            "radius": r,
            "ball_size": b,
            "naive_entropy_bound": mpmath.mpf(1 << n) * (binary_entropy(p) + mpmath.mpf(p.numerator) / p.denominator),
            "raw_bits": 1 << n,
        },
        flags=flags,
    )


@_prec
def restricted_nearbent_bound(n: int) -> BoundReport:
    if n % 2 == 0 or n < 3:
        raise ParityMismatch("restricted near-bent bound needs odd n >= 3")
    r = (n + 1) // 2
    b = _ball_clamped(n - 2, r)
    support_signs = mpmath.mpf(3) / 2 * b
    faces = alpha() * b
    leading = support_signs + faces
    flags = []
    if r > n - 2:
        flags.append("ball covers the whole (n-2)-face at this n")
    return BoundReport(
        kind="restricted-near-bent",
        n=n,
        s=1,
        leading_term_bits=leading,
        components={"support_and_signs": support_signs, "faces": faces},
        extras={
            "radius": r,
            "ball_size": b,
            "ball_fraction": Fraction(b, 1 << (n - 2)),
            "corollary_form": mpmath.mpf("3.47") * (1 << (n - 3)),
            "coefficient_of_2^(n-3)": leading / (1 << (n - 3)),
            "alpha_plus_3_2": alpha() + mpmath.mpf(3) / 2,
        },
        flags=flags,
    )


@_prec
def bent_bound(n: int) -> BoundReport:
    if n % 2 or n < 2:
        raise ParityMismatch("bent bound needs even n >= 2")
    leading = mpmath.mpf(11) / 32 * (1 << n)
    # asymptotic decomposition: N_0(n-1,1) ~ (alpha + 3/2) 2^(n-4), plus 2^(n-3) pair bits
    nearbent = (alpha() + mpmath.mpf(3) / 2) * mpmath.mpf(2) ** (n - 4)
    pairs = mpmath.mpf(2) ** (n - 3)
    components = {
        "restricted_near_bent": nearbent,
        "pair_bits": pairs,
        "rounding_to_11/32": leading - nearbent - pairs,
    }
    extras = {
        "degree_count_bound": degree_count_bound(n),
        "raw_bits": 1 << n,
    }
    if n >= 4:
        finite = restricted_nearbent_bound(n - 1).leading_term_bits + pairs
        extras["finite_n_decomposition"] = finite
        extras["finite_n_over_leading"] = finite / leading
    known = KNOWN_LOG2_BENT_COUNTS.get(n)
    flags = []
    if known is not None:
        if leading < known:
            flags.append(
                f"leading term {float(leading):.1f} is below the known log2 count {float(known):.1f}: "
                "not a valid bound at this n"
            )
        if "finite_n_decomposition" in extras and extras["finite_n_decomposition"] > known:
            flags.append("finite-n evaluation of the decomposition exceeds the known count")
    return BoundReport(
        kind="bent",
        n=n,
        s=0,
        leading_term_bits=leading,
        components=components,
        extras=extras,
        flags=flags,
        known_log2_count=known,
    )


def bounds_table(n_min: int, n_max: int) -> list[BoundReport]:
    reports = []
    for n in range(max(2, n_min), n_max + 1):
        if n % 2 == 0:
            reports.append(bent_bound(n))
        elif n >= 3:
            reports.append(restricted_nearbent_bound(n))
        for s in range(1, n + 1):
            if (n + s) % 2 == 0:
                reports.append(plateaued_bound(n, s))
    return reports
