"""Scenario files and the deterministic event-driven simulation engine.

A scenario describes an initial network, a manager hierarchy parameter
set, an ordered list of growth events, and which cost models to evaluate
at which polling counts. ``run`` executes the events and prices the final
network under each requested model. Everything is deterministic: equal
scenarios produce equal results, value for value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from typing import BinaryIO, Iterable, TextIO, Union

from .costs import (
    CostBreakdown,
    CostParams,
    cost_centralized,
    cost_flatbed,
    cost_imasnm_deploy,
    cost_imasnm_poll,
)
from .errors import ParseError, ValidationError
from .hierarchy import DomainId, ManagerTree
from .topology import Network, NodeId

__all__ = [
    "MODEL_NAMES",
    "AddNode",
    "Snapshot",
    "Event",
    "Scenario",
    "DomainState",
    "SnapshotRecord",
    "SimulationState",
    "SimulationResult",
    "load_scenario",
    "load_scenario_file",
    "load_bundled_scenario",
    "bundled_scenario_names",
    "apply_event",
    "run",
]

MODEL_NAMES = ("cs", "flatbed", "imasnm")

_SCENARIO_SUFFIX = ".scenario.json"


@dataclass(frozen=True)
class AddNode:
    """A discovered node joins a domain, optionally with new links."""

    node: NodeId
    domain: DomainId
    links: tuple[tuple[NodeId, Fraction], ...] = ()


@dataclass(frozen=True)
class Snapshot:
    """Record the hierarchy as it stands, under a label."""

    label: str


Event = Union[AddNode, Snapshot]


@dataclass(frozen=True)
class Scenario:
    """A fully validated scenario, ready to run."""

    name: str
    nodes: tuple[NodeId, ...]
    links: tuple[tuple[NodeId, NodeId, Fraction], ...]
    k_override: tuple[tuple[NodeId, NodeId, Fraction], ...]
    central: NodeId
    m_max: int
    params: CostParams
    domain_k: tuple[tuple[str, Fraction], ...]
    events: tuple[Event, ...]
    polling_counts: tuple[int, ...]
    models: tuple[str, ...]
    flatbed_itinerary: tuple[NodeId, ...] | None = None
    notes: str | None = None


@dataclass(frozen=True)
class DomainState:
    """Immutable view of one domain at some instant."""

    id: str
    manager_host: NodeId
    members: tuple[NodeId, ...]
    parent: str | None
    children: tuple[str, ...]


@dataclass(frozen=True)
class SnapshotRecord:
    """The hierarchy captured by one Snapshot event."""

    label: str
    managers: tuple[str, ...]
    domains: tuple[DomainState, ...]
    costs: tuple[tuple[str, CostBreakdown], ...] | None = None


@dataclass
class SimulationState:
    """Mutable state threaded through apply_event."""

    network: Network
    tree: ManagerTree
    snapshots: list[SnapshotRecord] = field(default_factory=list)


@dataclass(frozen=True)
class SimulationResult:
    """Final state and cost tables produced by ``run``."""

    scenario: str
    models: tuple[str, ...]
    polling_counts: tuple[int, ...]
    per_poll: tuple[tuple[str, Fraction], ...]
    deploy: tuple[tuple[str, Fraction], ...]
    totals: tuple[tuple[str, tuple[tuple[int, Fraction], ...]], ...]
    snapshots: tuple[SnapshotRecord, ...]
    final_domains: tuple[DomainState, ...]

    def per_poll_of(self, model: str) -> Fraction:
        return dict(self.per_poll)[model]

    def deploy_of(self, model: str) -> Fraction:
        return dict(self.deploy)[model]

    def total_of(self, model: str, polls: int) -> Fraction:
        return dict(dict(self.totals)[model])[polls]


# -- scenario loading -------------------------------------------------------


def _fail(path: str, message: str) -> ValidationError:
    return ValidationError(path, message)


def _reject_constant(token: str) -> None:
    raise ValueError(f"non-finite number {token!r} is not allowed")


def _expect_object(value: object, path: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(path, f"expected an object, got {type(value).__name__}")
    return value


def _expect_array(value: object, path: str) -> list:
    if not isinstance(value, list):
        raise _fail(path, f"expected an array, got {type(value).__name__}")
    return value


def _expect_str(value: object, path: str) -> str:
    if not isinstance(value, str):
        raise _fail(path, f"expected a string, got {type(value).__name__}")
    return value


def _expect_int(value: object, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise _fail(path, f"must be at least {minimum}, got {value}")
    return value


def _expect_number(value: object, path: str) -> Fraction:
    # json parsing maps floats to Decimal, so decimal literals stay exact
    if isinstance(value, bool) or not isinstance(value, (int, Decimal)):
        raise _fail(path, f"expected a number, got {value!r}")
    number = Fraction(value)
    if number < 0:
        raise _fail(path, f"must be non-negative, got {value}")
    return number


def _expect_keys(
    obj: dict, path: str, required: Iterable[str], optional: Iterable[str] = ()
) -> None:
    required = set(required)
    allowed = required | set(optional)
    for key in obj:
        if key not in allowed:
            raise _fail(f"{path}.{key}" if path else key, "unknown key")
    for key in sorted(required - obj.keys()):
        raise _fail(f"{path}.{key}" if path else key, "missing required key")


def _parse_domain_id(value: object, path: str) -> DomainId:
    text = _expect_str(value, path)
    try:
        return DomainId.parse(text)
    except ValueError as exc:
        raise _fail(path, str(exc)) from None


def load_scenario(source: Union[BinaryIO, TextIO, bytes, str]) -> Scenario:
    """Parse and fully validate a scenario from a stream or JSON text.

    Raises ParseError for malformed JSON and ValidationError (carrying the
    offending field path) for schema violations. The format is strict:
    unknown keys are rejected.
    """
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, (bytes, bytearray)):
        try:
            text = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"scenario is not valid UTF-8: {exc}") from exc
    else:
        text = data
    try:
        raw = json.loads(
            text, parse_float=Decimal, parse_constant=_reject_constant
        )
    except (json.JSONDecodeError, ValueError) as exc:
        raise ParseError(f"scenario is not valid JSON: {exc}") from exc
    return _scenario_from_raw(raw)


def load_scenario_file(path) -> Scenario:
    """Open ``path`` and load the scenario it contains."""
    with open(path, "rb") as stream:
        return load_scenario(stream)


def bundled_scenario_names() -> tuple[str, ...]:
    """Names of the scenario files shipped inside the package."""
    directory = resources.files(__package__).joinpath("scenarios")
    names = []
    for entry in directory.iterdir():
        if entry.name.endswith(_SCENARIO_SUFFIX):
            names.append(entry.name[: -len(_SCENARIO_SUFFIX)])
    return tuple(sorted(names))


def load_bundled_scenario(name: str) -> Scenario:
    """Load a scenario shipped with the package, by name or file name."""
    if name.endswith(_SCENARIO_SUFFIX):
        name = name[: -len(_SCENARIO_SUFFIX)]
    entry = resources.files(__package__).joinpath(
        "scenarios", name + _SCENARIO_SUFFIX
    )
    if not entry.is_file():
        known = ", ".join(bundled_scenario_names())
        raise FileNotFoundError(
            f"no bundled scenario {name!r} (have: {known})"
        )
    with entry.open("rb") as stream:
        return load_scenario(stream)


def _scenario_from_raw(raw: object) -> Scenario:
    top = _expect_object(raw, "")
    _expect_keys(
        top,
        "",
        required=(
            "name",
            "nodes",
            "links",
            "central",
            "m_max",
            "params",
            "events",
            "polling_counts",
            "models",
        ),
        optional=("k_override", "domain_k", "flatbed_itinerary", "notes"),
    )

    name = _expect_str(top["name"], "name")
    if not name:
        raise _fail("name", "must not be empty")

    nodes: list[NodeId] = []
    node_set: set[NodeId] = set()
    for index, entry in enumerate(_expect_array(top["nodes"], "nodes")):
        node = _expect_int(entry, f"nodes[{index}]", minimum=1)
        if node in node_set:
            raise _fail(f"nodes[{index}]", f"duplicate node {node}")
        nodes.append(node)
        node_set.add(node)
    if not nodes:
        raise _fail("nodes", "must not be empty")

    links: list[tuple[NodeId, NodeId, Fraction]] = []
    seen_pairs: set[tuple[NodeId, NodeId]] = set()
    for index, entry in enumerate(_expect_array(top["links"], "links")):
        path = f"links[{index}]"
        triple = _expect_array(entry, path)
        if len(triple) != 3:
            raise _fail(path, f"expected [a, b, coeff], got {len(triple)} items")
        a = _expect_int(triple[0], f"{path}[0]", minimum=1)
        b = _expect_int(triple[1], f"{path}[1]", minimum=1)
        coeff = _expect_number(triple[2], f"{path}[2]")
        if a not in node_set:
            raise _fail(f"{path}[0]", f"unknown node {a}")
        if b not in node_set:
            raise _fail(f"{path}[1]", f"unknown node {b}")
        if a == b:
            raise _fail(path, f"link joins node {a} to itself")
        pair = (a, b) if a <= b else (b, a)
        if pair in seen_pairs:
            raise _fail(path, f"duplicate link {pair[0]}-{pair[1]}")
        seen_pairs.add(pair)
        links.append((a, b, coeff))

    central = _expect_int(top["central"], "central", minimum=1)
    if central not in node_set:
        raise _fail("central", f"central node {central} is not in nodes")

    m_max = _expect_int(top["m_max"], "m_max", minimum=1)

    params_obj = _expect_object(top["params"], "params")
    param_fields = (
        "s_req",
        "s_res",
        "num_vars",
        "s_ma",
        "d",
        "ma_size",
        "mda_size",
        "ma_res",
    )
    _expect_keys(params_obj, "params", required=param_fields)
    num_vars = _expect_int(params_obj["num_vars"], "params.num_vars", minimum=1)
    sizes = {
        name: _expect_number(params_obj[name], f"params.{name}")
        for name in param_fields
        if name != "num_vars"
    }
    params = CostParams(num_vars=num_vars, **sizes)

    all_nodes = set(node_set)
    events: list[Event] = []
    snapshot_labels: set[str] = set()
    for index, entry in enumerate(_expect_array(top["events"], "events")):
        path = f"events[{index}]"
        obj = _expect_object(entry, path)
        if len(obj) != 1:
            raise _fail(path, "event must have exactly one key")
        (kind,) = obj
        if kind == "add_node":
            body_path = f"{path}.add_node"
            body = _expect_object(obj[kind], body_path)
            _expect_keys(
                body, body_path, required=("node", "domain"), optional=("links",)
            )
            node = _expect_int(body["node"], f"{body_path}.node", minimum=1)
            if node in all_nodes:
                raise _fail(f"{body_path}.node", f"node {node} already exists")
            domain = _parse_domain_id(body["domain"], f"{body_path}.domain")
            event_links: list[tuple[NodeId, Fraction]] = []
            if "links" in body:
                links_path = f"{body_path}.links"
                peers: set[NodeId] = set()
                for li, link_entry in enumerate(
                    _expect_array(body["links"], links_path)
                ):
                    lpath = f"{links_path}[{li}]"
                    pair_entry = _expect_array(link_entry, lpath)
                    if len(pair_entry) != 2:
                        raise _fail(
                            lpath,
                            f"expected [peer, coeff], got {len(pair_entry)} items",
                        )
                    peer = _expect_int(pair_entry[0], f"{lpath}[0]", minimum=1)
                    coeff = _expect_number(pair_entry[1], f"{lpath}[1]")
                    if peer == node:
                        raise _fail(f"{lpath}[0]", "peer is the node itself")
                    if peer not in all_nodes:
                        raise _fail(f"{lpath}[0]", f"unknown node {peer}")
                    if peer in peers:
                        raise _fail(f"{lpath}[0]", f"duplicate peer {peer}")
                    peers.add(peer)
                    event_links.append((peer, coeff))
            all_nodes.add(node)
            events.append(AddNode(node, domain, tuple(event_links)))
        elif kind == "snapshot":
            label = _expect_str(obj[kind], f"{path}.snapshot")
            if label in snapshot_labels:
                raise _fail(f"{path}.snapshot", f"duplicate label {label!r}")
            snapshot_labels.add(label)
            events.append(Snapshot(label))
        else:
            raise _fail(f"{path}.{kind}", "unknown event kind")

    k_override: list[tuple[NodeId, NodeId, Fraction]] = []
    if "k_override" in top:
        seen_override: dict[tuple[NodeId, NodeId], Fraction] = {}
        for index, entry in enumerate(
            _expect_array(top["k_override"], "k_override")
        ):
            path = f"k_override[{index}]"
            triple = _expect_array(entry, path)
            if len(triple) != 3:
                raise _fail(path, f"expected [i, j, cost], got {len(triple)} items")
            i = _expect_int(triple[0], f"{path}[0]", minimum=1)
            j = _expect_int(triple[1], f"{path}[1]", minimum=1)
            cost = _expect_number(triple[2], f"{path}[2]")
            if i not in all_nodes:
                raise _fail(f"{path}[0]", f"unknown node {i}")
            if j not in all_nodes:
                raise _fail(f"{path}[1]", f"unknown node {j}")
            if i == j and cost != 0:
                raise _fail(path, "a node's cost to itself must be 0")
            pair = (i, j) if i <= j else (j, i)
            if pair in seen_override:
                raise _fail(path, f"duplicate pair {pair[0]}-{pair[1]}")
            seen_override[pair] = cost
            k_override.append((i, j, cost))

    domain_k: list[tuple[str, Fraction]] = []
    if "domain_k" in top:
        dk_obj = _expect_object(top["domain_k"], "domain_k")
        for key in dk_obj:
            path = f"domain_k.{key}"
            _parse_domain_id(key, path)
            domain_k.append((key, _expect_number(dk_obj[key], path)))

    polling_counts: list[int] = []
    for index, entry in enumerate(
        _expect_array(top["polling_counts"], "polling_counts")
    ):
        polling_counts.append(
            _expect_int(entry, f"polling_counts[{index}]", minimum=0)
        )

    models: list[str] = []
    for index, entry in enumerate(_expect_array(top["models"], "models")):
        path = f"models[{index}]"
        model = _expect_str(entry, path)
        if model not in MODEL_NAMES:
            raise _fail(path, f"unknown model {model!r} (choose from {MODEL_NAMES})")
        if model in models:
            raise _fail(path, f"duplicate model {model!r}")
        models.append(model)

    flatbed_itinerary: tuple[NodeId, ...] | None = None
    if "flatbed_itinerary" in top:
        stops: list[NodeId] = []
        for index, entry in enumerate(
            _expect_array(top["flatbed_itinerary"], "flatbed_itinerary")
        ):
            path = f"flatbed_itinerary[{index}]"
            stop = _expect_int(entry, path, minimum=1)
            if stop not in all_nodes:
                raise _fail(path, f"unknown node {stop}")
            if stop in stops:
                raise _fail(path, f"node {stop} repeated")
            stops.append(stop)
        if not stops:
            raise _fail("flatbed_itinerary", "must not be empty")
        if stops[0] != central:
            raise _fail(
                "flatbed_itinerary[0]",
                f"itinerary must start at the central node {central}",
            )
        flatbed_itinerary = tuple(stops)

    notes: str | None = None
    if "notes" in top:
        value = top["notes"]
        if isinstance(value, str):
            notes = value
        elif isinstance(value, list):
            parts = [
                _expect_str(part, f"notes[{i}]") for i, part in enumerate(value)
            ]
            notes = "\n".join(parts)
        else:
            raise _fail("notes", "expected a string or array of strings")

    return Scenario(
        name=name,
        nodes=tuple(nodes),
        links=tuple(links),
        k_override=tuple(k_override),
        central=central,
        m_max=m_max,
        params=params,
        domain_k=tuple(domain_k),
        events=tuple(events),
        polling_counts=tuple(polling_counts),
        models=tuple(models),
        flatbed_itinerary=flatbed_itinerary,
        notes=notes,
    )


# -- engine -----------------------------------------------------------------


def _domain_states(tree: ManagerTree) -> tuple[DomainState, ...]:
    states = []
    for domain in tree.domains():
        parent = tree.parent_of(domain.id)
        states.append(
            DomainState(
                id=str(domain.id),
                manager_host=domain.manager_host,
                members=tuple(domain.members),
                parent=None if parent is None else str(parent),
                children=tuple(str(c) for c in tree.children_of(domain.id)),
            )
        )
    return tuple(states)


def apply_event(state: SimulationState, event: Event) -> SimulationState:
    """Apply one event to the state, in place, and return the state.

    AddNode inserts the node and its links into the network first, then
    hands the node to the hierarchy (which may split domains). Snapshot
    appends a record of the current hierarchy and changes nothing else.
    """
    if isinstance(event, AddNode):
        network = state.network.add_node(event.node)
        for peer, coeff in event.links:
            network = network.add_link(event.node, peer, coeff)
        state.network = network
        state.tree.add_node_to_domain(event.node, event.domain)
    elif isinstance(event, Snapshot):
        state.snapshots.append(
            SnapshotRecord(
                label=event.label,
                managers=tuple(str(d) for d in state.tree.domain_ids()),
                domains=_domain_states(state.tree),
            )
        )
    else:
        raise TypeError(f"unknown event type: {event!r}")
    return state


def _model_costs(
    scenario: Scenario,
    state: SimulationState,
    models: tuple[str, ...],
) -> dict[str, CostBreakdown]:
    costs: dict[str, CostBreakdown] = {}
    zero = Fraction(0)
    for model in models:
        if model == "cs":
            per_poll = cost_centralized(
                state.network,
                scenario.central,
                sorted(state.network.nodes),
                scenario.params,
            )
            deploy = zero
        elif model == "flatbed":
            itinerary = scenario.flatbed_itinerary
            if itinerary is None:
                others = sorted(state.network.nodes - {scenario.central})
                itinerary = (scenario.central, *others)
            if len(itinerary) < 2:
                per_poll = zero
            else:
                per_poll = cost_flatbed(state.network, itinerary, scenario.params)
            deploy = zero
        elif model == "imasnm":
            domain_k = dict(scenario.domain_k)
            per_poll = cost_imasnm_poll(
                state.network, state.tree, scenario.params, domain_k
            )
            deploy = cost_imasnm_deploy(state.network, state.tree, scenario.params)
        else:
            raise ValueError(f"unknown model {model!r}")
        costs[model] = CostBreakdown(
            deploy=deploy, per_poll=per_poll, polls=1, include_deploy=False
        )
    return costs


def run(
    scenario: Scenario,
    *,
    models: Iterable[str] | None = None,
    polling_counts: Iterable[int] | None = None,
    costs_at_snapshots: bool = False,
) -> SimulationResult:
    """Execute a scenario and price its final network.

    ``models`` and ``polling_counts`` default to the scenario's own; pass
    them to override from a CLI or a sweep. Costs are evaluated on the
    final post-event state; with ``costs_at_snapshots`` every snapshot
    additionally carries the per-model costs at that instant.
    """
    chosen = tuple(scenario.models if models is None else models)
    for model in chosen:
        if model not in MODEL_NAMES:
            raise ValueError(f"unknown model {model!r} (choose from {MODEL_NAMES})")
    ordered_models = tuple(m for m in MODEL_NAMES if m in set(chosen))

    raw_counts = (
        scenario.polling_counts if polling_counts is None else polling_counts
    )
    counts: list[int] = []
    for count in raw_counts:
        if isinstance(count, bool) or not isinstance(count, int):
            raise ValueError(f"polling count must be an int, got {count!r}")
        if count < 0:
            raise ValueError(f"polling count must be non-negative, got {count}")
        counts.append(count)
    ordered_counts = tuple(sorted(set(counts)))

    state = SimulationState(
        network=Network(
            scenario.nodes,
            scenario.links,
            {(i, j): cost for i, j, cost in scenario.k_override},
        ),
        tree=ManagerTree.initial_partition(
            scenario.nodes, scenario.m_max, scenario.central
        ),
    )
    for event in scenario.events:
        apply_event(state, event)
        if costs_at_snapshots and isinstance(event, Snapshot):
            snapshot_costs = _model_costs(scenario, state, ordered_models)
            state.snapshots[-1] = replace(
                state.snapshots[-1],
                costs=tuple(sorted(snapshot_costs.items())),
            )

    final_costs = _model_costs(scenario, state, ordered_models)
    per_poll = tuple(
        (model, final_costs[model].per_poll) for model in ordered_models
    )
    deploy = tuple((model, final_costs[model].deploy) for model in ordered_models)
    totals = tuple(
        (
            model,
            tuple(
                (count, final_costs[model].per_poll * count)
                for count in ordered_counts
            ),
        )
        for model in ordered_models
    )
    return SimulationResult(
        scenario=scenario.name,
        models=ordered_models,
        polling_counts=ordered_counts,
        per_poll=per_poll,
        deploy=deploy,
        totals=totals,
        snapshots=tuple(state.snapshots),
        final_domains=_domain_states(state.tree),
    )
