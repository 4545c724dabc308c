import numpy as np
import pytest

from bentpack.boolfn import BooleanFunction, PlateauClass, classify_plateau, restrict_to_hyperplane
from bentpack.errors import NotBijective, ParityMismatch, TooLarge
from bentpack.search import (
    enumerate_plateaued,
    maiorana_mcfarland,
    maiorana_mcfarland_corpus,
    random_maiorana_mcfarland,
    restriction_corpus,
    sweep_tables,
    triple_convolution_check,
)

from oracles import naive_walsh


def test_counts_n2():
    assert len(enumerate_plateaued(2, 0)) == 8
    affine = enumerate_plateaued(2, 2)
    assert len(affine) == 8
    assert {f.to_string() for f in affine} == {
        "0000", "1111", "0011", "1100", "0101", "1010", "0110", "1001"}


def test_counts_small(plateaued_small, bent4):
    assert len(bent4) == 896
    counts = {k: len(v) for k, v in plateaued_small.items()}
    # frozen from the sweep; n = 3 is re-derived below from the double-sum oracle
    assert counts == {(2, 0): 8, (2, 2): 8, (3, 1): 112, (3, 3): 16, (4, 0): 896, (4, 2): 1120, (4, 4): 32}
    for (n, s), funcs in plateaued_small.items():
        assert all(classify_plateau(f) == PlateauClass(s) for f in funcs)
        ints = [f.to_int() for f in funcs]
        assert ints == sorted(ints)


def test_n3_counts_from_oracle(plateaued_small):
    by_s = {1: set(), 3: set()}
    for v in range(256):
        table = [(v >> (7 - k)) & 1 for k in range(8)]
        mags = {abs(w) for w in naive_walsh(table)} - {0}
        if len(mags) == 1:
            peak = mags.pop()
            s = 2 * (peak.bit_length() - 1) - 3
            by_s[s].add(v)
    for s in (1, 3):
        assert {f.to_int() for f in plateaued_small[(3, s)]} == by_s[s]


def test_enumerate_errors():
    with pytest.raises(TooLarge):
        enumerate_plateaued(5, 1)
    with pytest.raises(ParityMismatch):
        enumerate_plateaued(4, 1)


def test_sweep_covers_everything():
    seen = np.concatenate([bits for _, bits in sweep_tables(2, chunk=5)])
    assert seen.shape == (16, 4)
    assert [int("".join(map(str, r)), 2) for r in seen] == list(range(16))


def test_mm_examples(bent4):
    assert maiorana_mcfarland(1, None, [0, 1]) == BooleanFunction.from_anf(2, [(1, 2)])
    f = maiorana_mcfarland(2, None, [0, 1, 2, 3])
    assert f == BooleanFunction.from_anf(4, [(1, 3), (2, 4)])
    assert f in set(bent4)
    g = random_maiorana_mcfarland(3, 17)
    assert classify_plateau(g) == PlateauClass(0)
    assert random_maiorana_mcfarland(3, 17) == g
    with pytest.raises(NotBijective):
        maiorana_mcfarland(2, None, [0, 1, 1, 3])


def test_mm_corpora_bent_and_restrictions(mm6, mm8):
    for corpus in (mm6, mm8):
        for f in corpus:
            assert classify_plateau(f).bent
            for k in (1, f.n):
                assert classify_plateau(restrict_to_hyperplane(f, k)) == PlateauClass(1)
    rc = restriction_corpus(maiorana_mcfarland_corpus(3, 5, seed=1), 2)
    assert rc.n == 5 and rc.s == 1 and len(rc) == 5


def test_triple_convolution_examples(cubic3, majority3):
    assert triple_convolution_check(BooleanFunction.from_anf(2, [(1, 2)]), 0)
    assert not triple_convolution_check(cubic3, 1)
    # majority is quadratic, so 1-plateaued
    assert triple_convolution_check(majority3, 1)
    with pytest.raises(ParityMismatch):
        triple_convolution_check(cubic3, 0)


def test_triple_convolution_large_n():
    f = random_maiorana_mcfarland(8, 3)
    assert triple_convolution_check(f, 0)
    assert not triple_convolution_check(f, 2)
