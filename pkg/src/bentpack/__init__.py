"""Bent and plateaued Boolean functions: transforms, statistics, bounds and a compact codec."""

from .affine import AffineTransform, BinaryMatrix, apply_affine, invert_transform, normalize_ea, random_invertible_matrix
from .boolfn import (
    BooleanFunction,
    PlateauClass,
    SubspacePair,
    WalshSpectrum,
    algebraic_degree,
    anf,
    classify_plateau,
    coset_signed_sums,
    derivative,
    dual_bent,
    inverse_walsh,
    mobius_transform,
    restrict_to_hyperplane,
    walsh_transform,
)
from .codec import CodecBitstream, bitstream_length_report, decode, encode, encode_bent_dual, encode_plateaued
from .errors import DomainError

__version__ = "0.1.0"
