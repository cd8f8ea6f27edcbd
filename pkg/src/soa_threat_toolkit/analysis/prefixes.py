"""Entry grouping, common prefixes and countermeasure placement hints."""

from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from soa_threat_toolkit.core.model import Record
from soa_threat_toolkit.paths.enumeration import AttackPath


class EntryGroup(Record):
    entry: str
    path_count: int
    common_prefix: Tuple[str, ...]

    @property
    def terminal(self) -> str:
        return self.common_prefix[-1]

    @property
    def incoming(self) -> Optional[Tuple[str, str]]:
        """Edge into the prefix terminal, if the prefix has more than one element."""
        if len(self.common_prefix) < 2:
            return None
        return (self.common_prefix[-2], self.common_prefix[-1])


class PlacementHint(Record):
    location: str
    covered_entries: Tuple[str, ...]
    covered_path_count: int
    incoming: Tuple[Tuple[str, str], ...] = ()


def longest_common_prefix(sequences: Sequence[Sequence[str]]) -> Tuple[str, ...]:
    if not sequences:
        return ()
    prefix = list(sequences[0])
    for seq in sequences[1:]:
        size = 0
        for a, b in zip(prefix, seq):
            if a != b:
                break
            size += 1
        del prefix[size:]
    return tuple(prefix)


def group_by_entry(paths: Iterable[AttackPath]) -> List[EntryGroup]:
    """Group paths by entry and compute each group's longest common element prefix.

    Args:
        paths: Attack paths, usually of a single intruder kind.

    Returns:
        One group per entry, ordered by entry id.
    """
    members: Dict[str, List[Tuple[str, ...]]] = defaultdict(list)
    for path in paths:
        members[path.entry].append(path.elements)
    return [
        EntryGroup(entry=entry, path_count=len(elements), common_prefix=longest_common_prefix(elements))
        for entry, elements in sorted(members.items())
    ]


def placement_hints(groups: Iterable[EntryGroup]) -> List[PlacementHint]:
    """Merge groups that share a prefix terminal into placement hints.

    Returns:
        Hints sorted by covered path count (descending), then location.
    """
    by_location: Dict[str, List[EntryGroup]] = defaultdict(list)
    for group in groups:
        if group.common_prefix:
            by_location[group.terminal].append(group)
    hints = [
        PlacementHint(
            location=location,
            covered_entries=tuple(sorted(g.entry for g in covered)),
            covered_path_count=sum(g.path_count for g in covered),
            incoming=tuple(sorted({g.incoming for g in covered if g.incoming is not None})),
        )
        for location, covered in by_location.items()
    ]
    return sorted(hints, key=lambda h: (-h.covered_path_count, h.location))
