import random

import pytest

from repcorr.chartable import character_table
from repcorr.corrgraph import (
    build_d_graph,
    build_e_graph,
    ktheory_corr,
    pimsner_matrices,
)
from repcorr.errors import SpecError
from repcorr.groups import construct_group
from repcorr.intlinalg import IntMatrix
from repcorr.reps import dsum, parse_rep_spec, regular_rep, rep_from_mults, trivial_rep

_TABLES = {}


def table_for(spec):
    if spec not in _TABLES:
        _TABLES[spec] = character_table(construct_group(spec))
    return _TABLES[spec]


POOL = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:6",
    "product:[2,2]",
    "dihedral:4",
    "dihedral:5",
    "symmetric:3",
    "symmetric:4",
    "perm:[(1 2 3), (1 2)(3 4)]",
]


def rows(m: IntMatrix):
    return [list(r) for r in m.entries]


def test_sym3_natural_rep_min_convention_matrix():
    t = table_for("symmetric:3")
    rho = parse_rep_spec(t, "perm:[(1 2), (1 2 3)]")
    g = build_e_graph(rho, "paper-min")
    assert rows(g.b_matrix) == [[1, 1, 1], [0, 0, 0], [1, 1, 2]]
    # the edge from the 2-dim block into the trivial block carries a 2x2 label
    edge = next(e for e in g.edges if e.src == 2 and e.dst == 0)
    assert (edge.rows, edge.cols, edge.count) == (2, 2, 1)


def test_sym3_natural_rep_module_count_matrix():
    t = table_for("symmetric:3")
    rho = parse_rep_spec(t, "perm:[(1 2), (1 2 3)]")
    g = build_e_graph(rho, "module-count")
    assert rows(g.b_matrix) == [[1, 1, 2], [0, 0, 0], [1, 1, 2]]
    edge = next(e for e in g.edges if e.src == 2 and e.dst == 0)
    assert (edge.rows, edge.cols, edge.count) == (1, 2, 2)


def test_sym3_twodim_square_both_conventions():
    t = table_for("symmetric:3")
    sq = parse_rep_spec(t, "tensor(mult:[0,0,1], mult:[0,0,1])")
    assert sq.mults == (1, 1, 1)
    pm = build_e_graph(sq, "paper-min")
    assert rows(pm.b_matrix) == [[1, 1, 1], [1, 1, 1], [1, 1, 2]]
    mc = build_e_graph(sq, "module-count")
    assert rows(mc.b_matrix) == [[1, 1, 2], [1, 1, 2], [1, 1, 2]]


def test_module_count_matrix_is_pimsner_transpose():
    rng = random.Random(3)
    for _ in range(200):
        t = table_for(rng.choice(POOL))
        mults = tuple(rng.randrange(0, 3) for _ in range(t.count))
        if not any(mults):
            continue
        rep = rep_from_mults(t, mults)
        g = build_e_graph(rep, "module-count")
        p = pimsner_matrices(rep)
        assert g.b_matrix == p.m_matrix.transpose()


def test_b_matrix_additive_under_direct_sum():
    rng = random.Random(5)
    for _ in range(100):
        t = table_for(rng.choice(POOL))
        a = rep_from_mults(t, tuple(rng.randrange(0, 3) for _ in range(t.count)))
        b = rep_from_mults(t, tuple(rng.randrange(0, 3) for _ in range(t.count)))
        if a.dim == 0 or b.dim == 0:
            continue
        for conv in ("paper-min", "module-count"):
            ga = build_e_graph(a, conv).b_matrix
            gb = build_e_graph(b, conv).b_matrix
            gs = build_e_graph(dsum(a, b), conv).b_matrix
            assert all(
                gs[i, j] == ga[i, j] + gb[i, j]
                for i in range(gs.rows)
                for j in range(gs.cols)
            )


def test_zero_multiplicity_rows_vanish():
    rng = random.Random(9)
    for _ in range(200):
        t = table_for(rng.choice(POOL))
        mults = tuple(rng.randrange(0, 2) for _ in range(t.count))
        if not any(mults):
            continue
        rep = rep_from_mults(t, mults)
        for conv in ("paper-min", "module-count"):
            b = build_e_graph(rep, conv).b_matrix
            for k in range(t.count):
                row_zero = all(b[k, i] == 0 for i in range(t.count))
                assert row_zero == (mults[k] == 0)


def test_dimension_bookkeeping_per_vertex():
    rng = random.Random(13)
    for _ in range(200):
        t = table_for(rng.choice(POOL))
        mults = tuple(rng.randrange(0, 3) for _ in range(t.count))
        rep = rep_from_mults(t, mults)
        if rep.dim == 0:
            continue
        for conv in ("paper-min", "module-count"):
            g = build_e_graph(rep, conv)
            for i in range(t.count):
                booked = sum(
                    e.count * e.rows * e.cols for e in g.edges if e.src == i
                )
                assert booked == rep.dim * t.dims[i] ** 2


def test_mckay_graph_of_sym3_natural_rep():
    t = table_for("symmetric:3")
    rho = parse_rep_spec(t, "perm:[(1 2), (1 2 3)]")
    d = build_d_graph(rho)
    assert rows(d.b_matrix) == [[1, 0, 1], [0, 1, 1], [1, 1, 2]]
    assert d.convention == "mckay"


def test_mckay_graph_of_trivial_rep_is_identity():
    for spec in POOL:
        t = table_for(spec)
        d = build_d_graph(trivial_rep(t))
        assert d.b_matrix == IntMatrix.identity(t.count)


def test_mckay_graph_has_no_empty_columns():
    rng = random.Random(17)
    for _ in range(100):
        t = table_for(rng.choice(POOL))
        mults = tuple(rng.randrange(0, 3) for _ in range(t.count))
        rep = rep_from_mults(t, mults)
        if rep.dim == 0:
            continue
        b = build_d_graph(rep).b_matrix
        for j in range(t.count):
            assert any(b[k, j] for k in range(t.count))


def test_zero_rep_gives_edgeless_graph_and_free_k0():
    t = table_for("symmetric:3")
    zero = rep_from_mults(t, (0, 0, 0))
    g = build_e_graph(zero)
    assert g.edges == ()
    assert rows(g.b_matrix) == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    p = pimsner_matrices(zero)
    assert p.j_cols == ()
    assert (p.reduced.rows, p.reduced.cols) == (3, 0)
    k = ktheory_corr(zero)
    assert (k.k0_free_rank, k.k0_torsion, k.k1_rank) == (3, (), 0)
    with pytest.raises(SpecError):
        build_d_graph(zero)


def test_pimsner_matrix_of_sym3_regular_rep():
    t = table_for("symmetric:3")
    reg = regular_rep(t)
    p = pimsner_matrices(reg)
    assert rows(p.m_matrix) == [[1, 1, 2], [1, 1, 2], [2, 2, 4]]
    assert p.j_cols == (0, 1, 2)
    assert rows(p.reduced) == [[0, -1, -2], [-1, 0, -2], [-2, -2, -3]]
    k = ktheory_corr(reg)
    assert k.k0_free_rank == 0
    assert k.k0_torsion == (5,)
    assert k.k1_rank == 0


def test_pimsner_reduced_drops_missing_blocks():
    t = table_for("symmetric:3")
    rho = parse_rep_spec(t, "perm:[(1 2), (1 2 3)]")
    p = pimsner_matrices(rho)
    assert p.j_cols == (0, 2)
    assert rows(p.reduced) == [[0, -1], [-1, -1], [-2, -1]]
    k = ktheory_corr(rho)
    assert (k.k0_free_rank, k.k0_torsion, k.k1_rank) == (1, (), 0)


def test_left_action_blocks_match_support():
    rng = random.Random(19)
    for _ in range(100):
        t = table_for(rng.choice(POOL))
        mults = tuple(rng.randrange(0, 2) for _ in range(t.count))
        if not any(mults):
            continue
        rep = rep_from_mults(t, mults)
        p = pimsner_matrices(rep)
        assert p.j_cols == tuple(i for i, m in enumerate(mults) if m)
        assert p.reduced.cols == sum(1 for m in mults if m)
        assert p.reduced.rows == t.count
