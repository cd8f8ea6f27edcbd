"""Shared builders for tests: bundled fixtures and seeded random models."""

import random
from typing import List

from soa_threat_toolkit.core.facts import FactBase, to_facts
from soa_threat_toolkit.core.loader import load_model
from soa_threat_toolkit.core.model import (
    Allocation,
    Channel,
    ExecutionUnit,
    InformationFlow,
    LogicalComponent,
    NetworkInterface,
    PortBinding,
    PublicElement,
    SystemModel,
    Topic,
)
from soa_threat_toolkit.core.safety import SafetyModel, load_safety
from soa_threat_toolkit.fixtures import (
    INSIDER_EXAMPLE,
    MINI_APOLLO_MODEL,
    MINI_APOLLO_SAFETY,
    OUTSIDER_EXAMPLE,
    read_fixture,
)


def outsider_model() -> SystemModel:
    return load_model(read_fixture(OUTSIDER_EXAMPLE))


def insider_model() -> SystemModel:
    return load_model(read_fixture(INSIDER_EXAMPLE))


def apollo_model() -> SystemModel:
    return load_model(read_fixture(MINI_APOLLO_MODEL))


def apollo_safety(model: SystemModel = None) -> SafetyModel:
    return load_safety(read_fixture(MINI_APOLLO_SAFETY), model or apollo_model())


def random_model(
    seed: int,
    topics: int = 5,
    publics: int = 2,
    networks: int = 3,
    ecus: int = 3,
    components: int = 5,
) -> SystemModel:
    """Build a small, valid random architecture.

    Every channel has one of the accepted shapes, every allocation goes in
    the right direction and every information flow names an in-port of its
    ECU, so the model passes validate(). Sizes stay well below 200 ports.
    """
    rng = random.Random(seed)
    topic_ids = [f"t{i}" for i in range(topics)]
    model_topics = [Topic(id=t, protected=rng.random() < 0.2) for t in topic_ids]

    channels = set()

    model_networks: List[NetworkInterface] = []
    for n in range(networks):
        ins = [f"n{n}.in{i}" for i in range(rng.randint(1, 2))]
        outs = [f"n{n}.out{i}" for i in range(rng.randint(1, 2))]
        model_networks.append(NetworkInterface(id=f"N{n}", in_ports=tuple(ins), out_ports=tuple(outs)))
        for port in ins:
            channels.add((port, rng.choice(outs)))

    model_ecus: List[ExecutionUnit] = []
    for e in range(ecus):
        ins = [f"e{e}.in{i}" for i in range(rng.randint(1, 2))]
        outs = [f"e{e}.out{i}" for i in range(rng.randint(1, 2))]
        model_ecus.append(ExecutionUnit(id=f"E{e}", in_ports=tuple(ins), out_ports=tuple(outs)))
        for port in ins:
            if rng.random() < 0.8:
                channels.add((port, rng.choice(outs)))

    net_ins = [p for n in model_networks for p in n.in_ports]
    net_outs = [p for n in model_networks for p in n.out_ports]
    ecu_ins = [p for e in model_ecus for p in e.in_ports]
    ecu_outs = [p for e in model_ecus for p in e.out_ports]

    model_publics = []
    for p in range(publics):
        port = f"p{p}.out"
        model_publics.append(PublicElement(id=f"P{p}", out_ports=(port,)))
        channels.add((port, rng.choice(net_ins)))
    for port in net_outs:
        channels.add((port, rng.choice(ecu_ins)))
    for port in ecu_outs:
        if rng.random() < 0.7:
            channels.add((port, rng.choice(net_ins)))

    model_components = []
    allocations = []
    for c in range(components):
        pubs = [PortBinding(port=f"c{c}.o{i}", topic=rng.choice(topic_ids)) for i in range(rng.randint(1, 2))]
        subs = [PortBinding(port=f"c{c}.i{i}", topic=rng.choice(topic_ids)) for i in range(rng.randint(0, 2))]
        model_components.append(LogicalComponent(id=f"C{c}", pub_ports=tuple(pubs), sub_ports=tuple(subs)))
        for binding in pubs:
            if rng.random() < 0.7:
                allocations.append(Allocation(component_port=binding.port, platform_port=rng.choice(ecu_outs)))
        for binding in subs:
            if rng.random() < 0.7:
                allocations.append(Allocation(component_port=binding.port, platform_port=rng.choice(ecu_ins)))

    flows = set()
    for e in model_ecus:
        for port in e.in_ports:
            if rng.random() < 0.6:
                flows.add((e.id, port, rng.choice(topic_ids)))

    return SystemModel(
        topics=tuple(model_topics),
        components=tuple(model_components),
        ecus=tuple(model_ecus),
        networks=tuple(model_networks),
        publics=tuple(model_publics),
        channels=tuple(Channel(from_port=a, to_port=b) for a, b in sorted(channels)),
        allocations=tuple(allocations),
        information_flows=tuple(
            InformationFlow(ecu=e, entry_port=p, topic=t) for e, p, t in sorted(flows)
        ),
    )


def random_facts(seed: int, **sizes) -> FactBase:
    return to_facts(random_model(seed, **sizes))
