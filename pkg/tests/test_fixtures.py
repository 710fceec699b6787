import math

import pytest

from fsdraw.fixtures import (
    arrangement_init,
    gen_fan,
    gen_grid,
    gen_polygon,
    gen_rhombus,
    gen_star,
    jitter,
)
from fsdraw.geometry import angle_diff
from fsdraw.model import INTERIOR, derive_embedding, derive_zones, ingest, to_document
from fsdraw.pipeline import optimize

PI = math.pi


def _degree(d, v):
    return sum(v in e for e in d.edges)


def test_arrangement_two_lines():
    dirs = arrangement_init(["A", "B", "A", "B"])
    # ends at 0, pi/2, pi, 3pi/2
    assert dirs["A"] == pytest.approx(PI)
    assert dirs["B"] == pytest.approx(3 * PI / 2)
    assert abs(angle_diff(dirs["A"] - dirs["B"])) == pytest.approx(PI / 2)


def test_arrangement_single_line():
    # ends at angle 0 and pi: the difference points along the negative x axis
    assert arrangement_init(["A", "A"]) == {"A": pytest.approx(PI)}


def test_arrangement_three_lines():
    dirs = arrangement_init(list("ABCABC"))
    mod = sorted(x % PI for x in dirs.values())
    assert [b - a for a, b in zip(mod, mod[1:])] == pytest.approx([PI / 3, PI / 3])


def test_arrangement_rejects_bad_ends():
    with pytest.raises(ValueError):
        arrangement_init(["A", "B", "A"])


def test_polygon_examples():
    sq = gen_polygon(2)
    assert sorted(sq.vertices.values()) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    for k, alpha in [(3, 2 * PI / 3), (4, 3 * PI / 4)]:
        m = ingest(gen_polygon(k))
        assert len(m.drawing.edges) == 2 * k
        assert m.n_zones == k
        inner = [c.angle for c in m.corners if c.kind == INTERIOR]
        assert inner == pytest.approx([alpha] * (2 * k))


def test_grid_examples():
    assert ingest(gen_grid(1, 1)).n_zones == 2
    assert ingest(gen_grid(2, 1)).n_zones == 3
    g = gen_grid(3, 3)
    assert ingest(g).n_zones == 6
    assert optimize(g).lambda_star == pytest.approx(PI / 2, abs=1e-9)


def test_fan_examples():
    f2 = gen_fan(2)
    assert len(f2.vertices) == 6
    assert len(derive_embedding(f2).interior_faces()) == 2
    f3 = gen_fan(3)
    assert _degree(f3, 0) == 4
    assert len(derive_embedding(f3).interior_faces()) == 3


@pytest.mark.parametrize("k", [2, 3, 5, 9, 12])
def test_fan_zone_count(k):
    assert ingest(gen_fan(k, skew=0.3)).n_zones == k + 1


def test_star_and_rhombus():
    assert ingest(gen_star(4)).n_zones == 4
    assert ingest(gen_rhombus(PI / 4)).n_zones == 2


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_polygon(5, skew=0.2),
        lambda: gen_grid(4, 3, skew=PI / 6),
        lambda: gen_fan(7, skew=-0.4),
        lambda: gen_star(5, skew=0.5),
    ],
)
def test_deterministic_documents(make):
    assert to_document(make()) == to_document(make())


def test_skew_bounds():
    with pytest.raises(ValueError):
        gen_grid(2, 2, skew=PI / 2)


def test_skew_changes_right_angles():
    m = ingest(gen_grid(1, 1, skew=0.3))
    inner = sorted(c.angle for c in m.corners if c.kind == INTERIOR)
    assert inner == pytest.approx([PI / 2 - 0.3] * 2 + [PI / 2 + 0.3] * 2)


def test_jitter_is_seeded_and_valid():
    g = gen_grid(3, 2)
    a, b = jitter(g, 0.1, seed=3), jitter(g, 0.1, seed=3)
    assert to_document(a) == to_document(b)
    assert to_document(a) != to_document(jitter(g, 0.1, seed=4))
    assert ingest(a).n_zones == 5


def test_generated_zones_rederive(small_drawing):
    zs = derive_zones(derive_embedding(small_drawing))
    hint = tuple(frozenset(z.edges) for z in zs.zones)
    hinted = small_drawing.__class__(small_drawing.vertices, small_drawing.edges, hint)
    assert [z.edges for z in ingest(hinted).zones.zones] == [z.edges for z in zs.zones]
