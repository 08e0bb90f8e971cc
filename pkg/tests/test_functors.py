from fractions import Fraction

import pytest

from groupoid_card.categorified import build_Q, c_groupoid_skeleton
from groupoid_card.functors import (
    EquivariantFunctor,
    FunctorValidationError,
    category_of_elements,
    expected_size,
    functor_from_json,
    make_cycle_tuple_functor,
    make_fixed_point_functor,
    make_trivial_functor,
    validate_functor,
    verify_general_theorem,
)
from groupoid_card.groups import make_cyclic, make_product, make_symmetric, to_cayley_json
from groupoid_card.groupoids import cardinality, skeletons_equivalent, weak_quotient
from groupoid_card.permutations import CapExceededError


def test_trivial_functor_valid_and_unit_expectation():
    for group in (make_cyclic(1), make_cyclic(7), make_symmetric(3), make_product(make_cyclic(2), make_cyclic(2))):
        functor = make_trivial_functor(group)
        report = validate_functor(functor)
        assert report.ok
        assert expected_size(functor) == 1
        theorem = verify_general_theorem(functor)
        assert theorem.equal
        assert theorem.expected == theorem.elements_cardinality == 1


def test_trivial_functor_elements_is_conjugation_quotient():
    group = make_symmetric(3)
    action = category_of_elements(make_trivial_functor(group))
    assert action.carrier_size == group.order
    assert weak_quotient(action).aut_orders() == (2, 3, 6)


def test_fixed_point_functor_s3():
    functor = make_fixed_point_functor(3)
    assert sorted(functor.fiber_sizes) == [0, 0, 1, 1, 1, 3]
    assert validate_functor(functor).ok
    assert expected_size(functor) == 1

    action = category_of_elements(functor)
    assert action.carrier_size == 6
    theorem = verify_general_theorem(functor)
    assert theorem.equal
    assert theorem.expected == 1
    assert len(theorem.orbits) == 2
    for orbit in theorem.orbits:
        assert orbit.size == 3
        assert orbit.stabilizer_order == 2


def test_fixed_point_functor_degenerate_degrees():
    one = make_fixed_point_functor(1)
    assert one.fiber_sizes == (1,)
    assert verify_general_theorem(one).equal

    zero = make_fixed_point_functor(0)
    assert zero.fiber_sizes == (0,)
    theorem = verify_general_theorem(zero)
    assert theorem.equal
    assert theorem.expected == 0

    with pytest.raises(CapExceededError):
        make_fixed_point_functor(4, cap=3)


def test_cycle_tuple_functor_matches_decorated_permutations():
    functor = make_cycle_tuple_functor(3, (0, 1, 0))
    assert expected_size(functor) == Fraction(1, 2)
    action = category_of_elements(functor)
    assert action.carrier_size == len(build_Q(3, (0, 1, 0))) == 3
    assert skeletons_equivalent(weak_quotient(action), c_groupoid_skeleton(3, (0, 1, 0)))
    theorem = verify_general_theorem(functor)
    assert theorem.equal


def test_cycle_tuple_functor_impossible_weight():
    functor = make_cycle_tuple_functor(3, (2, 1, 0))
    assert functor.total_size == 0
    theorem = verify_general_theorem(functor)
    assert theorem.equal
    assert theorem.expected == 0
    assert theorem.elements_cardinality == 0


def test_cycle_tuple_functor_mixed_vector():
    functor = make_cycle_tuple_functor(4, (1, 1, 0, 0))
    assert expected_size(functor) == Fraction(1, 2)
    assert verify_general_theorem(functor).equal


def test_corrupted_transport_is_reported_with_triple():
    group = make_cyclic(4)
    # Parity action on a 2-element fiber is functorial; breaking one entry
    # must surface a witnessing triple.
    def good(h, g):
        return (h % 2, 1 - h % 2) if h % 2 else (0, 1)

    healthy = EquivariantFunctor(group, (2, 2, 2, 2), good, name="parity")
    assert validate_functor(healthy).ok

    def bad(h, g):
        if h == 2 and g == 1:
            return (1, 0)  # should be the identity
        return good(h, g)

    corrupted = EquivariantFunctor(group, (2, 2, 2, 2), bad, name="corrupted")
    report = validate_functor(corrupted)
    assert not report.ok
    assert report.failing_law == "composition"
    assert report.witness is not None
    assert len(report.witness) == 3
    with pytest.raises(FunctorValidationError):
        verify_general_theorem(corrupted)


def test_identity_transport_violation():
    group = make_cyclic(2)
    functor = EquivariantFunctor(group, (2, 2), lambda h, g: (1, 0), name="flip-identity")
    report = validate_functor(functor)
    assert not report.ok
    assert report.failing_law == "identity"


def test_fiber_size_invariance_violation():
    group = make_symmetric(3)
    sizes = [1] * group.order
    sizes[1] = 2  # an element and its conjugates disagree
    functor = EquivariantFunctor(group, tuple(sizes), lambda h, g: (0,), name="lopsided")
    report = validate_functor(functor)
    assert not report.ok
    assert report.failing_law == "fiber_size"


def test_malformed_bijection_is_caught():
    group = make_cyclic(3)
    functor = EquivariantFunctor(group, (2, 2, 2), lambda h, g: (0, 0), name="collapsing")
    report = validate_functor(functor)
    assert not report.ok
    assert report.failing_law == "bijection"


def test_sampled_validation_mode():
    functor = make_fixed_point_functor(4)
    report = validate_functor(functor, check_cap=10, sample_budget=300)
    assert report.ok
    assert report.mode == "sampled validation"


def test_validation_result_is_cached():
    functor = make_fixed_point_functor(3)
    first = validate_functor(functor)
    assert validate_functor(functor) is first


def rotation_json_functor():
    # Z/4 acting on 2-point fibers through its parity quotient.
    group_json = to_cayley_json(make_cyclic(4))
    transports = {}
    for h in range(4):
        flip = h % 2
        arr = [1, 0] if flip else [0, 1]
        transports[str(h)] = {str(g): list(arr) for g in range(4)}
    return {
        "group": group_json,
        "fibers": {str(g): 2 for g in range(4)},
        "transports": transports,
        "name": "parity-json",
    }


def test_functor_json_round_trip_and_theorem():
    functor = functor_from_json(rotation_json_functor())
    assert validate_functor(functor).ok
    assert expected_size(functor) == 2
    theorem = verify_general_theorem(functor)
    assert theorem.equal
    assert theorem.elements_cardinality == 2


def test_functor_json_symmetric_group_spec():
    data = {
        "group": "S2",
        "fibers": {"0": 1, "1": 1},
        "transports": {str(h): {str(g): [0] for g in range(2)} for h in range(2)},
    }
    functor = functor_from_json(data)
    assert functor.group.name == "S2"
    assert verify_general_theorem(functor).equal


def test_functor_json_rejects_omissions():
    data = rotation_json_functor()
    del data["transports"]["2"]["1"]
    with pytest.raises(ValueError, match="omitted"):
        functor_from_json(data)

    data = rotation_json_functor()
    del data["fibers"]["3"]
    with pytest.raises(ValueError, match="missing"):
        functor_from_json(data)

    with pytest.raises(ValueError):
        functor_from_json({"group": "S2", "fibers": {}})
    with pytest.raises(ValueError):
        functor_from_json({"group": "Q8", "fibers": {}, "transports": {}})


def test_functor_json_allows_empty_fiber_omission():
    data = {
        "group": "S2",
        "fibers": {"0": 0, "1": 0},
        "transports": {},
    }
    functor = functor_from_json(data)
    assert validate_functor(functor).ok
    assert verify_general_theorem(functor).expected == 0


def test_fiber_sizes_must_cover_group():
    with pytest.raises(ValueError):
        EquivariantFunctor(make_cyclic(3), (1, 1), lambda h, g: (0,))
