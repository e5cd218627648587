"""Smoke tests for the Python bindings."""

import numpy as np
import pytest

import monoalign


def test_version():
    assert monoalign.__version__ == "1.0.0"


def test_align_single_matrix():
    q = np.array([[1, 2, 3], [4, 5, 6]], dtype=np.float32)
    out = monoalign.align(q)
    assert out.dtype == np.uint8
    assert out.shape == (2, 3)
    np.testing.assert_array_equal(out, [[1, 0, 0], [0, 1, 1]])


def test_align_batch_engines_agree():
    rng = np.random.default_rng(7)
    q = rng.uniform(-5, 5, size=(4, 8, 20)).astype(np.float32)
    ref = monoalign.align(q, engine="reference")
    par = monoalign.align(q, engine="parallel")
    assert ref.shape == (4, 8, 20)
    np.testing.assert_array_equal(ref, par)


def test_align_accepts_float64_input():
    q = np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    np.testing.assert_array_equal(monoalign.align(q), [[1, 0, 0], [0, 1, 1]])


def test_align_paths():
    q = np.array([[1, 2, 3], [4, 5, 6]], dtype=np.float32)
    path = monoalign.align_paths(q)
    assert path.dtype == np.int32
    np.testing.assert_array_equal(path, [0, 1, 1])


def test_align_paths_batch_is_list():
    q = np.zeros((2, 3, 5), dtype=np.float32)
    paths = monoalign.align_paths(q)
    assert isinstance(paths, list)
    assert len(paths) == 2
    for p in paths:
        np.testing.assert_array_equal(p, [0, 1, 2, 2, 2])


def test_ragged_lengths_zero_outside():
    q = np.ones((2, 4, 6), dtype=np.float32)
    lengths = np.array([[2, 3], [4, 6]], dtype=np.uint32)
    out = monoalign.align(q, lengths=lengths)
    assert out[0, 2:, :].sum() == 0
    assert out[0, :, 3:].sum() == 0
    assert out[0, :2, :3].sum() == 3
    assert out[1].sum() == 6


def test_infeasible_lengths_raise_value_error():
    q = np.zeros((3, 2), dtype=np.float32)  # t > s
    with pytest.raises(ValueError):
        monoalign.align(q)


def test_unknown_engine_raises_value_error():
    q = np.zeros((2, 3), dtype=np.float32)
    with pytest.raises(ValueError):
        monoalign.align(q, engine="turbo")


def test_tensor_round_trip(tmp_path):
    path = str(tmp_path / "batch.bin")
    rng = np.random.default_rng(11)
    values = rng.uniform(-5, 5, size=(3, 4, 9)).astype(np.float32)
    lengths = np.array([[2, 5], [4, 9], [1, 1]], dtype=np.uint32)
    monoalign.write_tensor(path, values, lengths=lengths)
    got_values, got_lengths = monoalign.read_tensor(path)
    np.testing.assert_array_equal(got_values, values)
    np.testing.assert_array_equal(got_lengths, lengths)


def test_alignment_tensor_round_trip(tmp_path):
    path = str(tmp_path / "matrix.bin")
    q = np.zeros((2, 3, 5), dtype=np.float32)
    out = monoalign.align(q)
    monoalign.write_tensor(path, out)
    got_values, _ = monoalign.read_tensor(path)
    assert got_values.dtype == np.uint8
    np.testing.assert_array_equal(got_values, out)


def test_read_missing_file_raises_os_error(tmp_path):
    with pytest.raises(OSError):
        monoalign.read_tensor(str(tmp_path / "absent.bin"))


def test_write_rejects_unsupported_dtype(tmp_path):
    with pytest.raises(ValueError):
        monoalign.write_tensor(str(tmp_path / "bad.bin"),
                               np.zeros((1, 2, 3), dtype=np.int64))


def test_generate_random_batch():
    a = monoalign.generate_random_batch(2, 8, 32, seed=5)
    b = monoalign.generate_random_batch(2, 8, 32, seed=5)
    c = monoalign.generate_random_batch(2, 8, 32, seed=6)
    assert a.dtype == np.float32
    assert a.shape == (2, 8, 32)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.min() >= -5.0
    assert a.max() <= 5.0
