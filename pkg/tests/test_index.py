"""Index assembly, footprint model, packed layout, and persistence."""

import numpy as np
import pytest

from preach import (IndexConfig, IndexFormatError, build_index, index_footprint,
                    index_resident_bytes, load_index, save_index)
from preach.generate import gen_kronecker_dag, gen_random_dag

from conftest import graph_from_edges


def test_d4_index_composes_the_parts(d4):
    idx = build_index(d4)
    assert idx.rch.order.tolist() == [1, 2, 3, 4]
    assert idx.levels.level.tolist() == [0, 1, 1, 2]
    assert idx.levels.back_level.tolist() == [2, 1, 1, 0]
    assert idx.fwd_labels.phi.tolist() == [1, 2, 4, 3]
    assert idx.original_n == 4


def test_two_cycle_collapses():
    idx = build_index(graph_from_edges(2, [(0, 1), (1, 0)]))
    assert idx.dag.dag.n == 1
    assert idx.original_n == 2


def test_empty_graph():
    idx = build_index(graph_from_edges(1, []))
    assert idx.dag.dag.n == 1
    assert index_footprint(idx) == 64


def test_footprint_formula(d4):
    assert index_footprint(build_index(d4)) == 4 * 4 + 64 * 4
    g = gen_random_dag(500, 2000, seed=1)
    idx = build_index(g)
    dag = idx.dag.dag
    assert index_footprint(idx) == 4 * dag.m + 64 * dag.n


def test_resident_bytes_within_model():
    for g in (gen_random_dag(2000, 4000, seed=2),
              gen_random_dag(2000, 16000, seed=2),
              gen_kronecker_dag(10, 8, seed=2)):
        idx = build_index(g)
        assert index_resident_bytes(idx) <= 1.25 * index_footprint(idx)


def test_packed_rows_mirror_labels():
    idx = build_index(gen_random_dag(300, 1200, seed=6))
    rows = idx.fwd_pack.reshape(-1, 8)
    assert np.array_equal(rows[:, 0], idx.fwd_labels.phi)
    assert np.array_equal(rows[:, 6], idx.levels.level)
    assert np.array_equal(rows[:, 7], idx.levels.back_level)
    rows_b = idx.bwd_pack.reshape(-1, 8)
    assert np.array_equal(rows_b[:, 0], idx.bwd_labels.phi)


def test_with_config_shares_answers(d4):
    idx = build_index(d4)
    clone = idx.with_config(IndexConfig(use_rch=True, use_levels=False, use_dfs=False))
    assert clone.config.use_dfs is False
    assert np.array_equal(clone.fwd_labels.phi, idx.fwd_labels.phi)


def assert_index_equal(a, b):
    assert np.array_equal(a.rch.order, b.rch.order)
    assert np.array_equal(a.rch.fwd_targets, b.rch.fwd_targets)
    assert np.array_equal(a.rch.bwd_targets, b.rch.bwd_targets)
    assert np.array_equal(a.fwd_pack, b.fwd_pack)
    assert np.array_equal(a.bwd_pack, b.bwd_pack)
    assert np.array_equal(a.dag.component_of, b.dag.component_of)
    assert a.dag.dag == b.dag.dag
    assert a.original_n == b.original_n


def test_save_load_round_trip(tmp_path):
    g = graph_from_edges(6, [(0, 1), (1, 0), (1, 2), (3, 4), (2, 4), (4, 5)])
    idx = build_index(g)
    path = tmp_path / "idx.bin"
    save_index(idx, path)
    assert_index_equal(load_index(path), idx)


def test_save_load_round_trip_random(tmp_path):
    idx = build_index(gen_random_dag(400, 1600, seed=12))
    path = tmp_path / "idx.bin"
    save_index(idx, path)
    assert_index_equal(load_index(path), idx)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOPE" + bytes(32))
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_load_rejects_truncation(tmp_path, d4):
    path = tmp_path / "idx.bin"
    save_index(build_index(d4), path)
    blob = path.read_bytes()
    path.write_bytes(blob[:-8])
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_load_rejects_bad_version(tmp_path, d4):
    path = tmp_path / "idx.bin"
    save_index(build_index(d4), path)
    blob = bytearray(path.read_bytes())
    blob[4] = 99
    path.write_bytes(bytes(blob))
    with pytest.raises(IndexFormatError):
        load_index(path)


def test_determinism_byte_identical(tmp_path):
    g = gen_random_dag(300, 1500, seed=21)
    p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
    save_index(build_index(g), p1)
    save_index(build_index(g), p2)
    assert p1.read_bytes() == p2.read_bytes()
