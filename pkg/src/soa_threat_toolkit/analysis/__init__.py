"""Post-processing of attack path sets."""

from .prefixes import EntryGroup, PlacementHint, group_by_entry, longest_common_prefix, placement_hints
from .summary import PairCount, Summary, pair_counts, summarize

__all__ = [
    'EntryGroup',
    'PlacementHint',
    'group_by_entry',
    'longest_common_prefix',
    'placement_hints',
    'PairCount',
    'pair_counts',
    'Summary',
    'summarize',
]
