"""Summary statistics of an analysis run."""

from collections import Counter, defaultdict
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple

from soa_threat_toolkit.core.model import Record
from soa_threat_toolkit.paths.enumeration import AttackPath, Intruder
from soa_threat_toolkit.utils.constants import Profile


class PairCount(Record):
    """Distinct attack paths from one element to another on an affected topic.

    For outsider paths the pair is the public element and the element the
    path ends in; for insider paths it is the publisher and the subscriber
    the intruder sits between.
    """

    source: str
    target: str
    affected_topic: str
    path_count: int


class ProfileCounts(Record):
    path_count: int = 0
    element_path_count: int = 0
    per_asset: Dict[str, int] = {}
    per_entry: Dict[str, int] = {}
    per_pair: Tuple[PairCount, ...] = ()


class Summary(Record):
    outsider_count: int = 0
    insider_count: int = 0
    outsider: ProfileCounts = ProfileCounts()
    insider: ProfileCounts = ProfileCounts()
    timings_ms: Optional[Dict[str, float]] = None


def attack_target(path: AttackPath) -> str:
    if path.intruder == Intruder.INSIDER:
        return path.elements[1]
    return path.elements[-1]


def pair_counts(paths: Iterable[AttackPath]) -> Tuple[PairCount, ...]:
    """Count distinct step sequences per (source, target, affected topic).

    A path that influences several assets is counted once per pair.
    """
    steps: Dict[Tuple[str, str, str], Set[Tuple[str, ...]]] = defaultdict(set)
    for path in paths:
        steps[(path.entry, attack_target(path), path.affected_topic)].add(path.steps)
    return tuple(
        PairCount(source=source, target=target, affected_topic=topic, path_count=len(found))
        for (source, target, topic), found in sorted(steps.items())
    )


def _counts(paths) -> ProfileCounts:
    return ProfileCounts(
        path_count=len(paths),
        element_path_count=len({(p.elements, p.affected_topic, p.asset_topic) for p in paths}),
        per_asset=dict(sorted(Counter(p.asset_topic for p in paths).items())),
        per_entry=dict(sorted(Counter(p.entry for p in paths).items())),
        per_pair=pair_counts(paths),
    )


def summarize(paths: Iterable[AttackPath], timings_ms: Optional[Mapping[str, float]] = None) -> Summary:
    """Count paths per intruder, asset topic, entry and element pair.

    Args:
        paths: Attack paths of any intruder kind.
        timings_ms: Wall-clock phase durations, or None to omit them.

    Returns:
        Summary record. Port-level and element-level counts are both kept.
    """
    paths = list(paths)
    outsider = [p for p in paths if p.intruder.value == Profile.OUTSIDER]
    insider = [p for p in paths if p.intruder.value == Profile.INSIDER]
    return Summary(
        outsider_count=len(outsider),
        insider_count=len(insider),
        outsider=_counts(outsider),
        insider=_counts(insider),
        timings_ms=dict(sorted(timings_ms.items())) if timings_ms is not None else None,
    )
