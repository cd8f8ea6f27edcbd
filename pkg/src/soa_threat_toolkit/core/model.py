"""Architecture data model of a publish/subscribe vehicle platform."""

from collections import Counter, defaultdict
from enum import Enum
from typing import Dict, List, Literal, NamedTuple, Optional, Set, Tuple

from pydantic import BaseModel, ConfigDict, Field, StrictBool

from soa_threat_toolkit.utils.constants import SCHEMA_VERSION, ViolationRule

ElementId = str


class Record(BaseModel):
    """Frozen record that rejects unknown fields."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class Topic(Record):
    id: ElementId = Field(min_length=1)
    protected: StrictBool = False


class PortBinding(Record):
    port: ElementId = Field(min_length=1)
    topic: ElementId = Field(min_length=1)


class LogicalComponent(Record):
    id: ElementId = Field(min_length=1)
    pub_ports: Tuple[PortBinding, ...] = ()
    sub_ports: Tuple[PortBinding, ...] = ()


class ExecutionUnit(Record):
    id: ElementId = Field(min_length=1)
    in_ports: Tuple[ElementId, ...] = ()
    out_ports: Tuple[ElementId, ...] = ()


class NetworkInterface(Record):
    id: ElementId = Field(min_length=1)
    in_ports: Tuple[ElementId, ...] = ()
    out_ports: Tuple[ElementId, ...] = ()


class PublicElement(Record):
    id: ElementId = Field(min_length=1)
    out_ports: Tuple[ElementId, ...] = ()


class Channel(Record):
    from_port: ElementId = Field(min_length=1)
    to_port: ElementId = Field(min_length=1)


class Allocation(Record):
    component_port: ElementId = Field(min_length=1)
    platform_port: ElementId = Field(min_length=1)


class InformationFlow(Record):
    ecu: ElementId = Field(min_length=1)
    entry_port: ElementId = Field(min_length=1)
    topic: ElementId = Field(min_length=1)


class SystemModel(Record):
    """The whole architecture: logical components on top of a platform."""

    schema_version: Literal[1] = Field(default=SCHEMA_VERSION, alias="schema")
    topics: Tuple[Topic, ...] = ()
    components: Tuple[LogicalComponent, ...] = ()
    ecus: Tuple[ExecutionUnit, ...] = ()
    networks: Tuple[NetworkInterface, ...] = ()
    publics: Tuple[PublicElement, ...] = ()
    channels: Tuple[Channel, ...] = ()
    allocations: Tuple[Allocation, ...] = ()
    information_flows: Tuple[InformationFlow, ...] = ()


class PortKind(str, Enum):
    COMPONENT_PUB = "component_pub"
    COMPONENT_SUB = "component_sub"
    ECU_IN = "ecu_in"
    ECU_OUT = "ecu_out"
    NET_IN = "net_in"
    NET_OUT = "net_out"
    PUBLIC_OUT = "public_out"


class PortInfo(NamedTuple):
    kind: PortKind
    owner: ElementId
    topic: Optional[ElementId] = None


class Violation(NamedTuple):
    element_id: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.element_id}: [{self.rule}] {self.message}"


# Channel shapes accepted by the write/read rules: (from kind, to kind, same owner)
_CHANNEL_SHAPES = {
    (PortKind.ECU_OUT, PortKind.NET_IN, False): "write1",
    (PortKind.ECU_IN, PortKind.ECU_OUT, True): "write2",
    (PortKind.NET_IN, PortKind.NET_OUT, True): "write3",
    (PortKind.PUBLIC_OUT, PortKind.NET_IN, False): "write4",
    (PortKind.NET_OUT, PortKind.ECU_IN, False): "read2",
}


class ModelIndex:
    """Lookup tables over a SystemModel.

    The first declaration of a port wins; duplicates are reported by
    validate() rather than here.
    """

    def __init__(self, model: SystemModel):
        self.model = model
        self.ports: Dict[ElementId, PortInfo] = {}
        self.topics: Dict[ElementId, Topic] = {}
        self.elements: Dict[ElementId, str] = {}

        for topic in model.topics:
            self.topics.setdefault(topic.id, topic)
        for comp in model.components:
            self.elements.setdefault(comp.id, "component")
            for binding in comp.pub_ports:
                self._add_port(binding.port, PortKind.COMPONENT_PUB, comp.id, binding.topic)
            for binding in comp.sub_ports:
                self._add_port(binding.port, PortKind.COMPONENT_SUB, comp.id, binding.topic)
        for ecu in model.ecus:
            self.elements.setdefault(ecu.id, "ecu")
            for port in ecu.in_ports:
                self._add_port(port, PortKind.ECU_IN, ecu.id)
            for port in ecu.out_ports:
                self._add_port(port, PortKind.ECU_OUT, ecu.id)
        for net in model.networks:
            self.elements.setdefault(net.id, "network")
            for port in net.in_ports:
                self._add_port(port, PortKind.NET_IN, net.id)
            for port in net.out_ports:
                self._add_port(port, PortKind.NET_OUT, net.id)
        for public in model.publics:
            self.elements.setdefault(public.id, "public")
            for port in public.out_ports:
                self._add_port(port, PortKind.PUBLIC_OUT, public.id)

    def _add_port(self, port: ElementId, kind: PortKind, owner: ElementId, topic=None) -> None:
        self.ports.setdefault(port, PortInfo(kind, owner, topic))

    def owner(self, port: ElementId) -> ElementId:
        """Element that declares the port. Raises KeyError for an unknown port."""
        return self.ports[port].owner

    def kind(self, port: ElementId) -> Optional[PortKind]:
        """Port kind, or None for an undeclared port."""
        info = self.ports.get(port)
        return info.kind if info else None

    def hosts(self) -> Dict[ElementId, Set[ElementId]]:
        """Map each ECU to the components that have a port allocated to it."""
        hosted: Dict[ElementId, Set[ElementId]] = defaultdict(set)
        for alloc in self.model.allocations:
            comp = self.ports.get(alloc.component_port)
            platform = self.ports.get(alloc.platform_port)
            if comp is None or platform is None:
                continue
            if platform.kind in (PortKind.ECU_IN, PortKind.ECU_OUT):
                hosted[platform.owner].add(comp.owner)
        return hosted

    def hosting_ecus(self, component: ElementId) -> List[ElementId]:
        return sorted(ecu for ecu, comps in self.hosts().items() if component in comps)


def _render(entry: Record) -> str:
    return "(" + ", ".join(str(v) for v in entry.model_dump().values()) + ")"


def _duplicates(ids) -> List[str]:
    return sorted(item for item, count in Counter(ids).items() if count > 1)


def validate(model: SystemModel) -> List[Violation]:
    """Return every invariant violation of the model.

    Args:
        model: The model to check.

    Returns:
        Violations sorted by element id, then rule name. Empty iff the model
        is well formed.
    """
    violations: List[Violation] = []
    index = ModelIndex(model)

    element_ids = (
        [c.id for c in model.components]
        + [e.id for e in model.ecus]
        + [n.id for n in model.networks]
        + [p.id for p in model.publics]
    )
    for dup in _duplicates(element_ids):
        violations.append(Violation(dup, ViolationRule.DUPLICATE_ID, f"element id '{dup}' is declared more than once"))
    for dup in _duplicates([t.id for t in model.topics]):
        violations.append(Violation(dup, ViolationRule.DUPLICATE_TOPIC, f"topic '{dup}' is declared more than once"))

    port_ids: List[str] = []
    for comp in model.components:
        port_ids.extend(b.port for b in comp.pub_ports + comp.sub_ports)
        for binding in comp.pub_ports + comp.sub_ports:
            if binding.topic not in index.topics:
                violations.append(Violation(
                    comp.id, ViolationRule.DANGLING_REFERENCE,
                    f"port '{binding.port}' references undeclared topic '{binding.topic}'",
                ))
    for unit in tuple(model.ecus) + tuple(model.networks):
        overlap = sorted(set(unit.in_ports) & set(unit.out_ports))
        for port in overlap:
            violations.append(Violation(unit.id, ViolationRule.PORT_OVERLAP, f"port '{port}' is both an in-port and an out-port"))
        port_ids.extend(p for p in unit.in_ports + unit.out_ports if p not in overlap)
        port_ids.extend(overlap)
    for public in model.publics:
        port_ids.extend(public.out_ports)
    for dup in _duplicates(port_ids):
        violations.append(Violation(dup, ViolationRule.DUPLICATE_PORT, f"port '{dup}' is declared more than once"))

    for label, entries in (
        ("channel", model.channels),
        ("allocation", model.allocations),
        ("information flow", model.information_flows),
    ):
        for entry, count in Counter(entries).items():
            if count > 1:
                first = next(iter(entry.model_dump().values()))
                violations.append(Violation(first, ViolationRule.DUPLICATE_ENTRY, f"{label} {_render(entry)} is declared {count} times"))

    for channel in model.channels:
        violations.extend(_check_channel(channel, index))
    for alloc in model.allocations:
        violations.extend(_check_allocation(alloc, index))
    for flow in model.information_flows:
        violations.extend(_check_flow(flow, index))

    return sorted(set(violations), key=lambda v: (v.element_id, v.rule, v.message))


def _check_channel(channel: Channel, index: ModelIndex) -> List[Violation]:
    missing = [p for p in (channel.from_port, channel.to_port) if p not in index.ports]
    if missing:
        return [
            Violation(port, ViolationRule.DANGLING_REFERENCE, f"channel {channel.from_port} -> {channel.to_port} references undeclared port '{port}'")
            for port in missing
        ]
    source = index.ports[channel.from_port]
    target = index.ports[channel.to_port]
    shape = (source.kind, target.kind, source.owner == target.owner)
    if shape not in _CHANNEL_SHAPES:
        return [Violation(
            channel.from_port, ViolationRule.CHANNEL_SHAPE,
            f"channel {channel.from_port} -> {channel.to_port} ({source.kind.value} -> {target.kind.value}) matches no write/read rule",
        )]
    return []


def _check_allocation(alloc: Allocation, index: ModelIndex) -> List[Violation]:
    missing = [p for p in (alloc.component_port, alloc.platform_port) if p not in index.ports]
    if missing:
        return [
            Violation(port, ViolationRule.DANGLING_REFERENCE, f"allocation references undeclared port '{port}'")
            for port in missing
        ]
    comp_kind = index.kind(alloc.component_port)
    platform_kind = index.kind(alloc.platform_port)
    expected = {PortKind.COMPONENT_PUB: PortKind.ECU_OUT, PortKind.COMPONENT_SUB: PortKind.ECU_IN}
    if comp_kind not in expected or platform_kind != expected[comp_kind]:
        return [Violation(
            alloc.component_port, ViolationRule.ALLOCATION_DIRECTION,
            f"{comp_kind.value} port '{alloc.component_port}' cannot be allocated to {platform_kind.value} port '{alloc.platform_port}'",
        )]
    return []


def _check_flow(flow: InformationFlow, index: ModelIndex) -> List[Violation]:
    violations = []
    if index.elements.get(flow.ecu) != "ecu":
        violations.append(Violation(flow.ecu, ViolationRule.DANGLING_REFERENCE, f"information flow references undeclared ECU '{flow.ecu}'"))
    if flow.topic not in index.topics:
        violations.append(Violation(flow.topic, ViolationRule.DANGLING_REFERENCE, f"information flow references undeclared topic '{flow.topic}'"))
    info = index.ports.get(flow.entry_port)
    if info is None:
        violations.append(Violation(flow.entry_port, ViolationRule.DANGLING_REFERENCE, f"information flow references undeclared port '{flow.entry_port}'"))
    elif info.kind != PortKind.ECU_IN or info.owner != flow.ecu:
        violations.append(Violation(flow.entry_port, ViolationRule.FLOW_PORT, f"'{flow.entry_port}' is not an in-port of ECU '{flow.ecu}'"))
    return violations


def reference_violations(model: SystemModel) -> List[Violation]:
    """Subset of validate() covering dangling ids only."""
    return [v for v in validate(model) if v.rule == ViolationRule.DANGLING_REFERENCE]


def derive_information_flows(model: SystemModel) -> List[InformationFlow]:
    """Over-approximate the information flows of every ECU.

    An ECU in-port that carries at least one allocated subscriber port feeds
    every topic published by a component hosted on that ECU.

    Args:
        model: A validated model.

    Returns:
        Sorted, de-duplicated flows.
    """
    index = ModelIndex(model)
    hosted = index.hosts()
    entry_ports: Dict[ElementId, Set[ElementId]] = defaultdict(set)
    for alloc in model.allocations:
        if index.kind(alloc.component_port) == PortKind.COMPONENT_SUB:
            entry_ports[index.owner(alloc.platform_port)].add(alloc.platform_port)

    published: Dict[ElementId, Set[ElementId]] = {
        comp.id: {b.topic for b in comp.pub_ports} for comp in model.components
    }
    flows = set()
    for ecu, ports in entry_ports.items():
        topics = set().union(*(published.get(c, set()) for c in hosted.get(ecu, set())))
        for port in ports:
            for topic in topics:
                flows.add(InformationFlow(ecu=ecu, entry_port=port, topic=topic))
    return sorted(flows, key=lambda f: (f.ecu, f.entry_port, f.topic))


def with_derived_flows(model: SystemModel) -> Tuple[SystemModel, List[InformationFlow]]:
    """Return a copy of the model whose flows include the derived ones.

    Returns:
        The extended model and the flows that were not declared explicitly.
    """
    explicit = set(model.information_flows)
    added = [f for f in derive_information_flows(model) if f not in explicit]
    extended = model.model_copy(update={"information_flows": tuple(model.information_flows) + tuple(added)})
    return extended, added
