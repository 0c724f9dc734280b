"""
Grid motion, capability matrix, teams and failure application
"""
import numpy as np
import pytest

from app.errors import IllegalMove, PositionOutOfBounds, ScenarioError
from app.formula.predicates import ALL, ApplyPredicate
from app.world import CapabilityMatrix, FailureEvent, Primitive, WorldModel, apply_failure, manhattan, teams


@pytest.fixture
def world():
    return WorldModel(5, 4, obstacles=frozenset({(2, 0), (2, 1), (2, 2)}),
                      regions={"a": (0, 3), "b": (4, 0)}, robot_count=3, skill_count=3)


@pytest.fixture
def z():
    return CapabilityMatrix.from_skills(3, 3, {1: [1, 2], 2: [1, 2, 3], 3: [3]})


def test_primitives_move_on_free_cells(world):
    assert world.step((0, 0), Primitive.N) == (0, 1)
    assert world.step((1, 2), Primitive.NE) == (2, 3)
    assert world.step((3, 3), Primitive.STAY) == (3, 3)
    with pytest.raises(IllegalMove):
        world.step((1, 1), Primitive.E)
    with pytest.raises(IllegalMove):
        world.step((0, 0), Primitive.S)


def test_moves_include_stay_and_skip_obstacles(world):
    assert world.moves((1, 0)) == [(1, 0), (1, 1), (0, 0), (0, 1)]
    assert world.moves((1, 3))[0] == (1, 3)


def test_region_lookup_and_bounds(world):
    assert world.region_at((4, 0)) == "b"
    assert world.region_at((1, 1)) is None
    with pytest.raises(PositionOutOfBounds):
        world.check_position((2, 1))
    with pytest.raises(PositionOutOfBounds):
        world.check_position((5, 0))
    with pytest.raises(ScenarioError):
        world.region_cell("c")


def test_connectivity_goes_around_the_wall(world):
    assert world.connected([(0, 0), (4, 0), (0, 3)])
    sealed = WorldModel(3, 2, obstacles=frozenset({(1, 0), (1, 1)}), robot_count=1)
    assert not sealed.connected([(0, 0), (2, 0)])


def test_regions_must_be_free_and_distinct():
    with pytest.raises(ScenarioError):
        WorldModel(3, 3, obstacles=frozenset({(1, 1)}), regions={"x": (1, 1)})
    with pytest.raises(ScenarioError):
        WorldModel(3, 3, regions={"x": (1, 1), "y": (1, 1)})
    with pytest.raises(ScenarioError):
        WorldModel(3, 3, regions={"x": (3, 0)})


def test_manhattan():
    assert manhattan((0, 0), (3, -2)) == 5


def test_teams_follow_the_matrix(z):
    assert teams(z) == {1: frozenset({1, 2}), 2: frozenset({1, 2}), 3: frozenset({2, 3})}
    assert z.skills_of(2) == frozenset({1, 2, 3})
    assert z.has(3, 0)


def test_capability_matrix_rejects_non_binary_entries():
    with pytest.raises(ScenarioError):
        CapabilityMatrix(np.array([[0, 2]]))
    with pytest.raises(ScenarioError):
        CapabilityMatrix.from_skills(1, 2, {1: [3]})


def test_failure_only_clears_bits(z):
    after = z.without([(2, 3), (1, ALL)])
    assert after.to_rows() == [[0, 0, 0], [1, 1, 0], [0, 0, 1]]
    assert z.to_rows() == [[1, 1, 0], [1, 1, 1], [0, 0, 1]]
    with pytest.raises(ScenarioError):
        z.without([(4, 1)])


def test_apply_failure_reports_broken_predicates(z):
    weld = ApplyPredicate("weld", 2, 1, "a")
    paint = ApplyPredicate("paint", 3, 2, "b")
    loose = ApplyPredicate("loose", 3, None, "b")
    after, failed = apply_failure(z, FailureEvent(4, ((2, 3),)), [weld, paint, loose], mobility_skill=1)
    assert failed == frozenset({paint})
    assert not after.has(2, 3)


def test_losing_mobility_breaks_every_task_of_the_robot(z):
    weld = ApplyPredicate("weld", 2, 1, "a")
    _, failed = apply_failure(z, FailureEvent(0, ((1, 1),)), [weld], mobility_skill=1)
    assert failed == frozenset({weld})
    _, failed = apply_failure(z, FailureEvent(0, ((1, 1),)), [weld], mobility_skill=None)
    assert failed == frozenset()


def test_total_failure(z):
    weld = ApplyPredicate("weld", 2, 1, "a")
    after, failed = apply_failure(z, FailureEvent(1, ((1, ALL),)), [weld], mobility_skill=1)
    assert after.skills_of(1) == frozenset()
    assert failed == frozenset({weld})


def test_failure_time_must_be_non_negative():
    with pytest.raises(ScenarioError):
        FailureEvent(-1, ())
