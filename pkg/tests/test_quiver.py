import pytest
from hypothesis import given, settings

from khbound.quiver import (
    GcdViolation,
    RangeViolation,
    Stage,
    Status,
    SumViolation,
    TooSmall,
    build_full_quiver,
    build_quiver,
    prune_decreasing_arrows,
    remove_vertex_zero,
    validate_params,
)

from .conftest import valid_params


def edges(q):
    return sorted((x.base, x.target, x.branch) for x in q.arrows)


class TestValidate:
    def test_three_dimensional_example(self):
        p = validate_params(3, [1, 1, 1])
        assert p.d == 3 and p.a == (1, 1, 1)

    def test_kleinian(self):
        assert validate_params(4, [1, 3]).d == 2

    @pytest.mark.parametrize(
        "m, a, exc",
        [
            ((4), [2, 2], GcdViolation),
            (5, [1, 1, 2], SumViolation),
            (3, [0, 3], RangeViolation),
            (3, [1, 3], RangeViolation),
            (5, [-1, 6], RangeViolation),
            (1, [1], TooSmall),
            (5, [5], TooSmall),
            (6, [3, 3], GcdViolation),
        ],
    )
    def test_rejects(self, m, a, exc):
        with pytest.raises(exc):
            validate_params(m, a)

    def test_order_is_kept(self):
        assert validate_params(7, [4, 1, 2]).a == (4, 1, 2)


class TestStages:
    @pytest.mark.parametrize(
        "m, a, nv, na, nr",
        [(3, [1, 1, 1], 3, 9, 9), (4, [1, 3], 4, 8, 4), (2, [1, 1], 2, 4, 2)],
    )
    def test_full_counts(self, m, a, nv, na, nr):
        q = build_full_quiver(validate_params(m, a))
        assert q.stage is Stage.FULL
        assert (len(q.vertices), len(q.arrows), len(q.relations)) == (nv, na, nr)
        assert all(r.status is Status.COMMUTATIVITY for r in q.relations)

    def test_arrow_ids_are_lexicographic(self):
        q = build_full_quiver(validate_params(3, [1, 1, 1]))
        assert [(x.base, x.branch) for x in sorted(q.arrows, key=lambda x: x.id)] == [
            (i, j) for i in range(3) for j in (1, 2, 3)
        ]
        assert [x.id for x in q.arrows] == list(range(9))

    def test_prune_kleinian_m4(self):
        full = build_full_quiver(validate_params(4, [1, 3]))
        pruned = prune_decreasing_arrows(full)
        assert edges(pruned) == [(0, 1, 1), (0, 3, 2), (1, 2, 1), (2, 3, 1)]
        removed = sorted({(x.base, x.target, x.branch) for x in full.arrows} - set(edges(pruned)))
        assert removed == [(1, 0, 2), (2, 1, 2), (3, 0, 1), (3, 2, 2)]

    def test_prune_three_dimensional(self):
        pruned = prune_decreasing_arrows(build_full_quiver(validate_params(3, [1, 1, 1])))
        assert edges(pruned) == [(0, 1, j) for j in (1, 2, 3)] + [(1, 2, j) for j in (1, 2, 3)]

    def test_final_kleinian_m4(self):
        final = build_quiver(validate_params(4, [1, 3]))[2]
        assert final.vertices == (1, 2, 3)
        assert [(b, t) for b, t, _ in edges(final)] == [(1, 2), (2, 3)]
        assert final.live_relations() == []

    def test_final_three_dimensional(self):
        final = build_quiver(validate_params(3, [1, 1, 1]))[2]
        assert final.vertices == (1, 2)
        assert edges(final) == [(1, 2, 1), (1, 2, 2), (1, 2, 3)]
        assert final.live_relations() == []

    def test_final_smallest(self):
        final = build_quiver(validate_params(2, [1, 1]))[2]
        assert final.vertices == (1,) and final.arrows == ()

    def test_stage_order_enforced(self):
        full = build_full_quiver(validate_params(3, [1, 2]))
        with pytest.raises(ValueError):
            remove_vertex_zero(full)
        with pytest.raises(ValueError):
            prune_decreasing_arrows(prune_decreasing_arrows(full))

    def test_surviving_commutativity(self):
        # 1/5(1,1,1,2): from vertex 1 both orders of branches 1,2 reach 3
        final = build_quiver(validate_params(5, [1, 1, 1, 2]))[2]
        live = {(r.base, r.pair) for r in final.live_relations()}
        assert (1, (1, 2)) in live and (1, (1, 4)) in live
        assert all(r.status is Status.COMMUTATIVITY for r in final.live_relations())

    def test_dot(self):
        dot = build_quiver(validate_params(3, [1, 1, 1]))[2].to_dot()
        assert dot.count("->") == 3
        assert 'label="x^1_2"' in dot
        assert dot == build_quiver(validate_params(3, [1, 1, 1]))[2].to_dot()


@pytest.mark.parametrize("m", range(2, 51))
def test_kleinian_family_is_linear(m):
    final = build_quiver(validate_params(m, [1, m - 1]))[2]
    assert final.vertices == tuple(range(1, m))
    assert [(b, t) for b, t, _ in edges(final)] == [(i, i + 1) for i in range(1, m - 1)]
    assert final.live_relations() == []


@settings(max_examples=150, deadline=None)
@given(valid_params(max_m=16))
def test_stage_invariants(ma):
    m, a = ma
    params = validate_params(m, a)
    full, pruned, final = build_quiver(params)
    d = len(a)
    assert len(full.relations) == m * d * (d - 1) // 2
    assert len(pruned.arrows) + (len(full.arrows) - len(pruned.arrows)) == m * d
    assert final.vertices == tuple(range(1, m))
    assert all(x.base < x.target for x in final.arrows)
    assert all(0 not in (x.base, x.target) for x in final.arrows)
    for x in full.arrows:
        assert x.target == (x.base + a[x.branch - 1]) % m
    # statuses only move forward
    for r1, r2, r3 in zip(full.relations, pruned.relations, final.relations):
        assert r1.status <= r2.status <= r3.status
