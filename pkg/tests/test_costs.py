"""Cost formulas: worked values, oracles, and scaling properties."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from netmansim import (
    CostParams,
    ItineraryTooShort,
    ManagerTree,
    Network,
    ROOT_DOMAIN,
    cost_centralized,
    cost_centralized_polled,
    cost_domain_flatbed,
    cost_flatbed,
    cost_flatbed_polled,
    cost_imasnm_deploy,
    cost_imasnm_poll,
    cost_imasnm_total,
)
from netmansim.hierarchy import DomainId


def params(**overrides) -> CostParams:
    base = dict(
        s_req=0, s_res=0, num_vars=1, s_ma=0, d=0, ma_size=0, mda_size=0, ma_res=0
    )
    base.update(overrides)
    return CostParams(**base)


class TestCostParams:
    def test_decimal_strings_stay_exact(self):
        p = params(mda_size="3276.8", ma_size="4014.08")
        assert p.mda_size == Fraction(32768, 10)
        assert p.ma_size == Fraction(401408, 100)

    def test_negative_size_rejected(self):
        with pytest.raises(ValueError):
            params(s_req=-1)

    def test_num_vars_must_be_a_positive_int(self):
        with pytest.raises(ValueError):
            params(num_vars=0)
        with pytest.raises(ValueError):
            params(num_vars=2.5)

    def test_non_numeric_rejected(self):
        with pytest.raises(ValueError):
            params(d=object())


class TestCentralized:
    def test_single_target_single_variable(self):
        net = Network(nodes=[1, 2], links=[(1, 2, 1)])
        assert cost_centralized(net, 1, [2], params(s_req=83, s_res=84)) == 167

    def test_empty_target_list_costs_nothing(self):
        net = Network(nodes=[1])
        assert cost_centralized(net, 1, [], params(s_req=83, s_res=84)) == 0

    def test_manager_among_targets_contributes_zero(self):
        net = Network(nodes=[1, 2], links=[(1, 2, 1)])
        p = params(s_req=83, s_res=84)
        assert cost_centralized(net, 1, [1, 2], p) == cost_centralized(net, 1, [2], p)

    def test_scales_linearly_with_num_vars(self):
        net = Network(nodes=[1, 2, 3], links=[(1, 2, 1), (1, 3, 4)])
        single = cost_centralized(net, 1, [2, 3], params(s_req=83, s_res=84))
        fived = cost_centralized(
            net, 1, [2, 3], params(s_req=83, s_res=84, num_vars=5)
        )
        assert fived == 5 * single

    def test_polled_multiplies_and_validates(self):
        net = Network(nodes=[1, 2], links=[(1, 2, 1)])
        p = params(s_req=83, s_res=84)
        assert cost_centralized_polled(net, 1, [2], p, 0) == 0
        assert cost_centralized_polled(net, 1, [2], p, 20) == 20 * 167
        with pytest.raises(ValueError):
            cost_centralized_polled(net, 1, [2], p, -1)


class TestFlatbed:
    def test_two_stop_round_trip(self):
        net = Network(nodes=[1, 2], links=[(1, 2, 1)])
        assert cost_flatbed(net, [1, 2], params(s_ma=100, d=10)) == 210

    def test_zero_payload_costs_code_size_per_hop(self):
        net = Network(nodes=[1, 2, 3], links=[(1, 2, 1), (2, 3, 1), (3, 1, 1)])
        assert cost_flatbed(net, [1, 2, 3], params(s_ma=100)) == 300

    def test_growing_payload_weights_later_hops(self):
        net = Network(nodes=[1, 2, 3], links=[(1, 2, 1), (2, 3, 2), (3, 1, 1)])
        assert cost_flatbed(net, [1, 2, 3], params(s_ma=10, d=5)) == 60

    def test_itinerary_must_have_two_stops(self):
        net = Network(nodes=[1])
        with pytest.raises(ItineraryTooShort):
            cost_flatbed(net, [1], params())
        with pytest.raises(ItineraryTooShort):
            cost_flatbed(net, [], params())

    def test_polled(self):
        net = Network(nodes=[1, 2], links=[(1, 2, 1)])
        p = params(s_ma=100, d=10)
        assert cost_flatbed_polled(net, [1, 2], p, 3) == 630
        assert cost_flatbed_polled(net, [1, 2], p, 1) == cost_flatbed(net, [1, 2], p)
        assert cost_flatbed_polled(net, [1, 2], p, 0) == 0


class TestDomainFlatbed:
    def test_reference_domain_term(self):
        value = cost_domain_flatbed(2, 1, params(mda_size="3276.8"))
        assert value == Fraction("9830.4")

    def test_manager_only_domain_still_pays_one_sweep(self):
        assert cost_domain_flatbed(0, 1, params(mda_size=100)) == 100

    def test_direct_formula(self):
        assert cost_domain_flatbed(4, 2, params(mda_size=10)) == 100

    def test_validation(self):
        with pytest.raises(ValueError):
            cost_domain_flatbed(-1, 1, params())
        with pytest.raises(ValueError):
            cost_domain_flatbed(1, -1, params())


def small_hierarchy() -> tuple[Network, ManagerTree]:
    # root {1,2} hosting 1, one child {3,4} hosting 3, joined 1 -5- 3
    net = Network(nodes=[1, 2, 3, 4], links=[(1, 2, 1), (1, 3, 5), (3, 4, 1)])
    tree = ManagerTree.initial_partition([1, 2], 2, 1)
    tree.domain(ROOT_DOMAIN).members.extend([3, 4])
    tree.handle_growth(ROOT_DOMAIN)
    assert [d.members for d in tree.domains()] == [[1, 2], [3, 4]]
    return net, tree


class TestImasnmDeploy:
    def test_childless_tree_deploys_nothing(self):
        net = Network(nodes=[1, 2])
        tree = ManagerTree.initial_partition([1, 2], 3, 1)
        assert cost_imasnm_deploy(net, tree, params(ma_size=10)) == 0

    def test_two_edges_hand_sum(self):
        # edges 1->2 (F=2) and 1->4 (F=1) with ma_size=10 cost 30
        net = Network(
            nodes=[1, 2, 3, 4, 5, 6],
            links=[(1, 2, 2), (1, 4, 1)],
        )
        tree = ManagerTree.initial_partition([1, 2, 3, 4, 5, 6], 2, 1)
        table = {str(d.id): d.manager_host for d in tree.domains()}
        assert table == {"1": 1, "1.1": 2, "1.2": 4}
        assert cost_imasnm_deploy(net, tree, params(ma_size=10)) == 30

    def test_reference_scenario_deployment(self, reference18_state, reference18_scenario):
        value = cost_imasnm_deploy(
            reference18_state.network, reference18_state.tree, reference18_scenario.params
        )
        assert value == 100352


class TestImasnmPoll:
    def test_single_root_domain_reduces_to_one_sweep(self):
        net = Network(nodes=[1, 2, 3])
        tree = ManagerTree.initial_partition([1, 2, 3], 3, 1)
        assert cost_imasnm_poll(net, tree, params(mda_size=100)) == 300

    def test_root_plus_child_hand_sum(self):
        net, tree = small_hierarchy()
        value = cost_imasnm_poll(net, tree, params(ma_res=10, mda_size=50))
        assert value == 50 + 100 + 100

    def test_domain_k_scales_one_domain_only(self):
        net, tree = small_hierarchy()
        p = params(mda_size=50)
        doubled = cost_imasnm_poll(net, tree, p, domain_k={"1.1": 2})
        assert doubled == 100 + 200
        unknown = cost_imasnm_poll(net, tree, p, domain_k={"1.9": 3})
        assert unknown == cost_imasnm_poll(net, tree, p)

    def test_reference_scenario_poll(self, reference18_state, reference18_scenario):
        value = cost_imasnm_poll(
            reference18_state.network,
            reference18_state.tree,
            reference18_scenario.params,
            dict(reference18_scenario.domain_k),
        )
        assert value == Fraction("73557.4")


class TestImasnmTotal:
    def test_reference_twenty_polls_excluding_deploy(
        self, reference18_state, reference18_scenario
    ):
        breakdown = cost_imasnm_total(
            reference18_state.network,
            reference18_state.tree,
            reference18_scenario.params,
            20,
            include_deploy=False,
        )
        assert breakdown.total == 1471148
        assert breakdown.per_poll == Fraction("73557.4")
        assert breakdown.deploy == 100352

    def test_zero_polls_including_deploy_is_deploy_only(
        self, reference18_state, reference18_scenario
    ):
        breakdown = cost_imasnm_total(
            reference18_state.network,
            reference18_state.tree,
            reference18_scenario.params,
            0,
            include_deploy=True,
        )
        assert breakdown.total == 100352

    def test_one_poll_including_deploy(self, reference18_state, reference18_scenario):
        breakdown = cost_imasnm_total(
            reference18_state.network,
            reference18_state.tree,
            reference18_scenario.params,
            1,
            include_deploy=True,
        )
        assert breakdown.total == Fraction("173909.4")

    def test_negative_polls_rejected(self, reference18_state, reference18_scenario):
        with pytest.raises(ValueError):
            cost_imasnm_total(
                reference18_state.network,
                reference18_state.tree,
                reference18_scenario.params,
                -1,
                include_deploy=False,
            )


# -- property checks ---------------------------------------------------------


def walk_itinerary(net: Network, stops, p: CostParams) -> Fraction:
    """Brute-force accumulator: carry the agent hop by hop."""
    total = Fraction(0)
    carried = p.s_ma
    visited = 0
    for here, there in zip(stops, stops[1:]):
        total += net.path_cost(here, there) * carried
        visited += 1
        carried = p.s_ma + visited * p.d
    total += net.path_cost(stops[-1], stops[0]) * carried
    return total


coeffs = st.fractions(min_value=0, max_value=20, max_denominator=16)
sizes = st.fractions(min_value=0, max_value=5000, max_denominator=32)


@st.composite
def ring_itineraries(draw):
    length = draw(st.integers(min_value=2, max_value=10))
    nodes = list(range(1, length + 1))
    links = []
    for a in nodes:
        for b in nodes:
            if a < b:
                links.append((a, b, draw(coeffs)))
    net = Network(nodes=nodes, links=links)
    stops = draw(st.permutations(nodes))
    p = params(s_ma=draw(sizes), d=draw(sizes))
    return net, stops, p


@given(ring_itineraries())
def test_flatbed_closed_form_equals_accumulator(case):
    net, stops, p = case
    assert cost_flatbed(net, stops, p) == walk_itinerary(net, stops, p)


@given(ring_itineraries(), st.integers(min_value=0, max_value=1000))
def test_flatbed_polling_is_linear(case, p_count):
    net, stops, p = case
    assert cost_flatbed_polled(net, stops, p, p_count) == p_count * cost_flatbed(
        net, stops, p
    )


@given(st.integers(min_value=0, max_value=1000))
def test_imasnm_polling_is_linear(p_count):
    net, tree = small_hierarchy()
    breakdown = cost_imasnm_total(
        net,
        tree,
        params(ma_res=5, mda_size="3276.8", ma_size=7),
        p_count,
        include_deploy=False,
    )
    assert breakdown.total == p_count * breakdown.per_poll


@given(
    st.sampled_from(
        ["s_req", "s_res", "num_vars", "s_ma", "d", "ma_size", "mda_size", "ma_res"]
    ),
    st.integers(min_value=1, max_value=1000),
)
def test_increasing_any_parameter_never_lowers_any_cost(field, bump):
    net, tree = small_hierarchy()
    base = CostParams(
        s_req=83, s_res=84, num_vars=2, s_ma=7, d=3, ma_size=11, mda_size=13, ma_res=5
    )
    raised = replace(base, **{field: getattr(base, field) + bump})
    targets = sorted(net.nodes)
    stops = [1, 2, 3, 4]
    assert cost_centralized(net, 1, targets, raised) >= cost_centralized(
        net, 1, targets, base
    )
    assert cost_flatbed(net, stops, raised) >= cost_flatbed(net, stops, base)
    assert cost_imasnm_deploy(net, tree, raised) >= cost_imasnm_deploy(
        net, tree, base
    )
    assert cost_imasnm_poll(net, tree, raised) >= cost_imasnm_poll(net, tree, base)


def test_singleton_domains_cost_only_their_sweeps():
    # hierarchy of one-member domains: poll cost is mda * k per domain,
    # plus the report edges
    net = Network(nodes=[1, 2], links=[(1, 2, 1)])
    tree = ManagerTree.initial_partition([1, 2], 1, 1)
    assert [d.members for d in tree.domains()] == [[1], [2]]
    p = params(mda_size=100)
    assert cost_imasnm_poll(net, tree, p) == 200
    with_reports = params(mda_size=100, ma_res=7)
    assert cost_imasnm_poll(net, tree, with_reports) == 207
