"""Bit-vector helper tests."""

import numpy as np
import pytest

from beaconphy import bitstream


def test_as_bits_accepts_lists_and_arrays():
    v = bitstream.as_bits([0, 1, 1, 0])
    assert v.dtype == np.uint8
    assert v.tolist() == [0, 1, 1, 0]
    same = bitstream.as_bits(np.array([1, 0], dtype=np.int64))
    assert same.dtype == np.uint8


def test_as_bits_rejects_bad_shapes_and_values():
    with pytest.raises(ValueError):
        bitstream.as_bits([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        bitstream.as_bits([0, 2, 1])


def test_zeros_ones():
    assert bitstream.zeros(5).tolist() == [0] * 5
    assert bitstream.ones(3).tolist() == [1] * 3
    assert bitstream.zeros(0).size == 0


def test_xor():
    out = bitstream.xor([1, 1, 0, 0], [1, 0, 1, 0])
    assert out.tolist() == [0, 1, 1, 0]
    with pytest.raises(ValueError):
        bitstream.xor([1, 0], [1, 0, 1])


def test_xor_is_involution():
    rng = np.random.default_rng(7)
    a = bitstream.random_bits(rng, 300)
    b = bitstream.random_bits(rng, 300)
    assert np.array_equal(bitstream.xor(bitstream.xor(a, b), b), a)


def test_ones_fraction():
    assert bitstream.ones_fraction([1, 1, 0, 0]) == 0.5
    assert bitstream.ones_fraction([0]) == 0.0
    assert bitstream.ones_fraction([1, 1, 1, 1]) == 1.0
    with pytest.raises(ValueError):
        bitstream.ones_fraction([])


def test_max_run_length():
    assert bitstream.max_run_length([]) == 0
    assert bitstream.max_run_length([0]) == 1
    assert bitstream.max_run_length([0, 1, 0, 1]) == 1
    assert bitstream.max_run_length([1, 1, 0, 1]) == 2
    assert bitstream.max_run_length([0, 0, 0, 0]) == 4
    assert bitstream.max_run_length([1, 0, 0, 1, 1, 1]) == 3


def test_max_run_length_matches_naive_scan():
    rng = np.random.default_rng(11)
    for _ in range(50):
        v = bitstream.random_bits(rng, int(rng.integers(1, 80)))
        best = cur = 1
        for i in range(1, v.size):
            cur = cur + 1 if v[i] == v[i - 1] else 1
            best = max(best, cur)
        assert bitstream.max_run_length(v) == best


def test_random_bits_bias():
    rng = np.random.default_rng(3)
    v = bitstream.random_bits(rng, 200000, p_one=0.9)
    # Binomial std is about 0.00067 here; 0.01 is a 15 sigma margin.
    assert abs(bitstream.ones_fraction(v) - 0.9) < 0.01
    assert bitstream.random_bits(rng, 1000, p_one=0.0).sum() == 0
    assert bitstream.random_bits(rng, 1000, p_one=1.0).sum() == 1000


def test_text_roundtrip():
    assert bitstream.to_text([1, 0, 1, 1]) == "1011"
    assert bitstream.from_text("1011").tolist() == [1, 0, 1, 1]
    assert bitstream.from_text("  0110\n").tolist() == [0, 1, 1, 0]
    rng = np.random.default_rng(5)
    v = bitstream.random_bits(rng, 997)
    assert np.array_equal(bitstream.from_text(bitstream.to_text(v)), v)


def test_from_text_rejects_other_characters():
    with pytest.raises(ValueError):
        bitstream.from_text("10x1")
    with pytest.raises(ValueError):
        bitstream.from_text("102")
