import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fsdraw.aux_graph import CONVEXITY, RESOLUTION, SAFE, SOURCE, UNSAFE, build_aux_graph, make_aux_graph
from fsdraw.fixtures import gen_rhombus
from fsdraw.model import ingest, parse_drawing
from fsdraw.solver import (
    BISECT,
    EXACT,
    CycleWitness,
    InfeasibleInput,
    Solution,
    bellman_ford,
    certify,
    solve_bisect,
    solve_exact,
)

from conftest import SMALL, SQUARE_DOC
from oracles import cycle_lambda, lp_lambda

PI = math.pi


def _aux(drawing, mode=SAFE):
    m = ingest(drawing)
    return build_aux_graph(m.corners, m.boundary, mode, n_zones=m.n_zones)


def _two_cycle(b01, b10):
    # zones 0, 1 with a resolution edge each way, plus source edges
    return make_aux_graph(
        2, [0, 1, 2, 2], [1, 0, 0, 1], [b01, b10, 0.0, 0.0], [1, 1, 0, 0],
        [RESOLUTION, RESOLUTION, SOURCE, SOURCE],
    )


def test_bellman_ford_feasible():
    a = _two_cycle(1.0, 3.0)
    d = bellman_ford(a, 2.0)
    assert not isinstance(d, CycleWitness)
    # weights at lam=2: 0->1 is -1, 1->0 is +1
    assert d.tolist() == pytest.approx([0.0, -1.0, 0.0])


def test_bellman_ford_witness():
    a = _two_cycle(PI / 2, PI / 2)
    w = bellman_ford(a, PI / 2 + 0.1)
    assert isinstance(w, CycleWitness)
    assert sorted(w.vertices) == [0, 1]
    assert w.sum_b == pytest.approx(PI)
    assert w.sum_m == 2
    assert w.weight(PI / 2 + 0.1) == pytest.approx(-0.2)
    assert w.ratio == pytest.approx(PI / 2)


def test_solvers_on_two_cycle():
    a = _two_cycle(1.0, 3.0)
    assert solve_exact(a).lambda_star == pytest.approx(2.0, abs=1e-12)
    assert solve_bisect(a, lo=0.0).lambda_star == pytest.approx(2.0, abs=1e-9)


def test_infeasible_input():
    # a convexity-only cycle with negative total can never be satisfied
    a = make_aux_graph(
        2, [0, 1, 2, 2], [1, 0, 0, 1], [-0.5, 0.1, 0.0, 0.0], [0, 0, 0, 0],
        [CONVEXITY, CONVEXITY, SOURCE, SOURCE],
    )
    with pytest.raises(InfeasibleInput):
        solve_bisect(a, lo=0.0)
    with pytest.raises(InfeasibleInput):
        solve_exact(a)


def test_unconstrained_graph_hits_cap():
    a = make_aux_graph(1, [1], [0], [0.0], [0], [SOURCE])
    for sol in (solve_bisect(a, lo=0.0), solve_exact(a)):
        assert sol.lambda_star == pytest.approx(2 * PI)


def test_square_solution():
    a = _aux(parse_drawing(SQUARE_DOC))
    for sol in (solve_bisect(a), solve_exact(a)):
        assert sol.lambda_star == pytest.approx(PI / 2, abs=1e-9)
        assert certify(a, sol).ok
    assert solve_exact(a).solver == EXACT
    assert solve_bisect(a).solver == BISECT


def test_rhombus_rotations():
    a = _aux(gen_rhombus(PI / 6))
    sol = solve_exact(a)
    assert sol.lambda_star == pytest.approx(PI / 2, abs=1e-12)
    # the two zones must end up perpendicular
    assert abs(sol.d[0] - sol.d[1]) == pytest.approx(PI / 3, abs=1e-9)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_against_lp(name):
    a = _aux(SMALL[name])
    lam_lp, _ = lp_lambda(a)
    assert solve_exact(a).lambda_star == pytest.approx(lam_lp, abs=1e-8)
    assert solve_bisect(a).lambda_star == pytest.approx(lam_lp, abs=1e-8)


@pytest.mark.parametrize("name", sorted(n for n in SMALL if ingest(SMALL[n]).n_zones <= 5))
def test_against_cycle_enumeration(name):
    for mode in (SAFE, UNSAFE):
        a = _aux(SMALL[name], mode)
        assert solve_exact(a).lambda_star == pytest.approx(cycle_lambda(a), abs=1e-12)


def test_certificate_rejects_low_lambda():
    a = _aux(parse_drawing(SQUARE_DOC))
    sol = solve_exact(a)
    low = Solution(sol.lambda_star - 0.1, sol.d, EXACT, 1, 0.0, None)
    cert = certify(a, low)
    assert cert.bounds_ok
    assert not cert.maximal_ok
    assert not cert.ok


def test_certificate_rejects_bad_rotations():
    a = _aux(parse_drawing(SQUARE_DOC))
    sol = solve_exact(a)
    d = sol.d.copy()
    d[0] += 1.0
    d[1] -= 1.0
    cert = certify(a, Solution(sol.lambda_star, d, EXACT, 1, 0.0, None))
    assert not cert.bounds_ok
    assert cert.worst_violation > 1.0
    assert cert.maximal_ok


def test_certificate_witness_on_square():
    a = _aux(parse_drawing(SQUARE_DOC))
    cert = certify(a, solve_exact(a))
    assert cert.probe_lambda == pytest.approx(PI / 2 + 1e-6)
    assert sorted(cert.witness.vertices) == [0, 1]
    assert cert.witness.sum_m == 2


def test_certificate_dict():
    a = _aux(parse_drawing(SQUARE_DOC))
    doc = certify(a, solve_bisect(a)).to_dict()
    assert doc["ok"] is True
    assert doc["witness"] is not None


MONO = ["grid3x3-skew", "fan4-skew", "polygon5", "star3-skew"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MONO), st.floats(0.0, 2 * PI), st.floats(0.0, 2 * PI))
def test_feasibility_is_monotone(name, x, y):
    a = _aux(SMALL[name])
    lo, hi = sorted((x, y))
    if not isinstance(bellman_ford(a, hi), CycleWitness):
        assert not isinstance(bellman_ford(a, lo), CycleWitness)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(MONO), st.floats(0.0, 2 * PI))
def test_feasible_exactly_below_optimum(name, lam):
    a = _aux(SMALL[name])
    star = solve_exact(a).lambda_star
    feasible = not isinstance(bellman_ford(a, lam), CycleWitness)
    if abs(lam - star) > 1e-9:
        assert feasible == (lam < star)


def test_zero_lambda_is_feasible(small_drawing):
    assert not isinstance(bellman_ford(_aux(small_drawing), 0.0), CycleWitness)


def test_fine_bisect_matches_exact(small_drawing):
    a = _aux(small_drawing)
    if a.n_zones > 8:
        pytest.skip("agreement is stated for at most 8 zones")
    fine = solve_bisect(a, tol=1e-10).lambda_star
    assert abs(fine - solve_exact(a).lambda_star) <= 1e-9


def test_optimum_bounds(small_drawing):
    safe = _aux(small_drawing, SAFE)
    unsafe = _aux(small_drawing, UNSAFE)
    ls = solve_exact(safe).lambda_star
    lu = solve_exact(unsafe).lambda_star
    assert safe.resolution_floor() - 1e-12 <= ls <= 2 * PI
    assert lu >= ls - 1e-12


def test_distances_satisfy_constraints(small_drawing):
    a = _aux(small_drawing)
    sol = solve_bisect(a)
    full = np.append(sol.d, 0.0)
    assert (full[a.head] - full[a.tail] <= a.weights(sol.lambda_star) + 1e-9).all()
    assert sol.infeasible_at is not None or sol.lambda_star == 2 * PI
