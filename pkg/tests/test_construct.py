import pytest

from bfcover.butterfly import ButterflyError, Color, build_butterfly, color, level_row_on_route
from bfcover.construct import (
    construct_cover,
    optimal_vertex_cover_size,
    plan,
    stage1,
    stage2,
    stage3,
    uncovered_after_12,
)
from bfcover.graph import coverage_report, is_geodesic
from bfcover.solve import bf_lower_bounds


def shape(bf, p):
    """(middle, {end, end}) of a diametral, in 1-based u/w names."""

    def name(v):
        return ("u" if bf.level(v) == 0 else "w") + str(bf.row(v) + 1)

    return name(p[bf.r]), {name(p[0]), name(p[-1])}


def test_stage1_r4_golden(bf4):
    got = [shape(bf4, p) for p in stage1(bf4, relax=True)]
    assert got == [
        ("u1", {"w1", "w9"}),
        ("u2", {"w2", "w10"}),
        ("u16", {"w16", "w8"}),
        ("u15", {"w15", "w7"}),
    ]


def test_stage2_r4_golden(bf4):
    got = [shape(bf4, p) for p in stage2(bf4, relax=True)]
    assert got == [
        ("w3", {"u3", "u4"}),
        ("w5", {"u5", "u6"}),
        ("w14", {"u14", "u13"}),
        ("w12", {"u12", "u11"}),
    ]


def test_uncovered_r4_golden(bf4):
    a, b, c, d = uncovered_after_12(bf4, relax=True)
    assert [bf4.u_index(v) for v in a] == [7, 8]
    assert [bf4.u_index(v) for v in b] == [9, 10]
    assert [bf4.w_index(v) for v in c] == [4, 6]
    assert [bf4.w_index(v) for v in d] == [11, 13]


def test_stage1_r5(bf5):
    paths = stage1(bf5)
    assert len(paths) == 8
    assert [shape(bf5, p)[0] for p in paths] == ["u1", "u2", "u3", "u4", "u32", "u31", "u30", "u29"]


def test_stage2_r5(bf5):
    mids = [shape(bf5, p)[0] for p in stage2(bf5)]
    assert mids == ["w5", "w7", "w9", "w11", "w28", "w26", "w24", "w22"]


def test_uncovered_r5(bf5):
    a, b, c, d = uncovered_after_12(bf5)
    assert [bf5.u_index(v) for v in a] == [13, 14, 15, 16]
    assert [bf5.u_index(v) for v in b] == [17, 18, 19, 20]
    assert [bf5.w_index(v) for v in c] == [6, 8, 10, 12]
    assert [bf5.w_index(v) for v in d] == [21, 23, 25, 27]


def test_stage3_r5(bf5):
    p = plan(bf5)
    assert (p.case, p.ell) == (1, 1)
    got = [shape(bf5, q) for q in p.stage3[:5]]
    assert got == [
        ("u14", {"w6", "w21"}),
        ("w8", {"u16", "u13"}),
        ("w25", {"u17", "u18"}),
        ("u15", {"w23", "w10"}),
        ("u20", {"w12", "w27"}),
    ]
    assert len(p.stage3) == 6
    assert p.extra_path is p.stage3[5]
    assert bf5.u(19) in p.extra_path and is_geodesic(bf5.graph, p.extra_path)


def test_stage3_r6_case2():
    bf = build_butterfly(6)
    p = plan(bf)
    assert (p.case, p.ell) == (2, 2)
    assert len(p.stage3) == 11 and p.extra_path is None


@pytest.mark.parametrize("r", range(5, 11))
def test_stage_counts_and_groups(r):
    bf = build_butterfly(r)
    p = plan(bf)
    q = 1 << (r - 3)
    assert len(p.stage1) == len(p.stage2) == 1 << (r - 2)
    assert len(p.stage3) == -(-(1 << (r - 1)) // 3)
    assert q == 3 * p.ell + p.case
    a, b, c, d = p.uncovered
    assert len(a) == len(b) == len(c) == len(d) == q
    assert all(color(bf, v) is Color.RED for v in c)
    assert all(color(bf, v) is Color.BLUE for v in d)
    reds = sum(color(bf, v) is Color.RED for v in a + b)
    assert reds == q and len(a + b) - reds == q


@pytest.mark.parametrize("r", range(5, 10))
def test_stage3_covers_leftovers(r):
    bf = build_butterfly(r)
    p = plan(bf)
    hit = {v for path in p.stage3 for v in path}
    assert set().union(*map(set, p.uncovered)) <= hit


@pytest.mark.parametrize("r", range(5, 10))
def test_every_path_diametral_except_extra(r):
    bf = build_butterfly(r)
    p = plan(bf)
    for path in p.paths:
        assert is_geodesic(bf.graph, path)
        if path is p.extra_path:
            continue
        assert len(path) == 2 * r + 1
        assert color(bf, path[0]) is not color(bf, path[-1])


@pytest.mark.parametrize("r", range(5, 11))
def test_interior_rows_covered_by_stages_1_and_2(r):
    """Row projection from the index formulas alone, without walking paths."""
    n, q, h = 1 << r, 1 << (r - 3), 1 << (r - 1)
    routes = []  # (u_row, w_row) pairs traversed by stage 1/2 diametrals
    for i in range(1, q + 1):
        routes += [(i - 1, i - 1), (i - 1, i + h - 1)]
    for i in range(n, 7 * q, -1):
        routes += [(i - 1, i - 1), (i - 1, i - h - 1)]
    for i in range(q + 1, 3 * q, 2):
        routes += [(i - 1, i - 1), (i, i - 1)]
    for i in range(7 * q, 5 * q + 1, -2):
        routes += [(i - 1, i - 1), (i - 2, i - 1)]
    assert len(routes) == 4 * (1 << (r - 2))
    for j in range(1, r):
        rows = {level_row_on_route(ur, wr, j, r) for ur, wr in routes}
        assert rows == set(range(n))


@pytest.mark.parametrize("r, size", [(5, 22), (6, 43), (7, 86), (8, 171)])
def test_construct_cover_sizes(r, size):
    bf = build_butterfly(r)
    cover = construct_cover(bf)
    assert len(cover) == size == optimal_vertex_cover_size(r) == bf_lower_bounds(r)[0]
    assert coverage_report(bf.graph, cover.paths, "vertex").valid


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_construct_rejects_small_r(r):
    with pytest.raises(ButterflyError, match="r >= 5"):
        construct_cover(build_butterfly(r))


def test_stage3_needs_r5(bf4):
    with pytest.raises(ButterflyError):
        stage3(bf4)


def test_cover_is_deterministic(bf5):
    assert construct_cover(bf5).paths == construct_cover(bf5).paths
