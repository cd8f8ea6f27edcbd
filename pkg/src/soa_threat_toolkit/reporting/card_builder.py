"""Adaptive Card rendering of an analysis report."""

from typing import Any, Dict, List

import adaptive_cards.card_types as types
from adaptive_cards.card import AdaptiveCard
from adaptive_cards.containers import Column, ColumnSet, Container, Fact, FactSet
from adaptive_cards.elements import TextBlock
from adaptive_cards.validation import CardValidatorFactory, Result, ValidationFailure

from soa_threat_toolkit.reporting.report import Report
from soa_threat_toolkit.utils.constants import PATH_ARROW, Profile

# Teams incoming webhooks reject payloads above this size (KB)
TEAMS_SIZE_LIMIT_KB = 28


class CardValidator:
    """Checks cards against the Microsoft Teams schema and size limit."""

    def __init__(self):
        self.validator = CardValidatorFactory.create_validator_microsoft_teams()

    def validate(self, card: AdaptiveCard) -> Dict[str, Any]:
        """Validate a card.

        Returns:
            A dictionary with validation results:
                "valid": Boolean indicating if validation passed
                "details": List of validation failure details (if any)
                "size": The card size in KB
                "size_limit": The Teams size limit in KB
                "suggestions": Fixes for the failures found
        """
        result = self.validator.validate(card)
        card_size = self.validator.card_size(card)
        details = self.validator.details()

        response = {
            "valid": result == Result.SUCCESS,
            "details": [finding.failure.value for finding in details],
            "size": card_size,
            "size_limit": TEAMS_SIZE_LIMIT_KB,
            "suggestions": [],
        }
        for finding in details:
            if finding.failure == ValidationFailure.SIZE_LIMIT_EXCEEDED:
                response["suggestions"].append(
                    "Lower max_groups so fewer entry groups and hints are listed."
                )
            elif finding.failure == ValidationFailure.EMPTY_CARD:
                response["suggestions"].append("Card body is empty.")
        return response


class ReportCardBuilder:
    """Builds a summary card: counts, prefixes, placement hints and trace gaps."""

    def __init__(self, version: str = "1.5", max_groups: int = 10):
        """
        Args:
            version: Adaptive card schema version.
            max_groups: Rows listed per table before the rest is elided.
        """
        self.version = version
        self.max_groups = max_groups

    def build(self, report: Report, title: str = "Attack path analysis") -> AdaptiveCard:
        card = AdaptiveCard.new().version(self.version)
        card.add_item(TextBlock(
            text=title,
            size=types.FontSize.LARGE,
            weight=types.FontWeight.BOLDER,
            wrap=True,
        ))
        card.add_item(FactSet(facts=self._summary_facts(report)))

        if report.has_outsider_analysis():
            card.add_item(self._prefix_section(report))
        hints = report.placement_hints.get(Profile.OUTSIDER, ())
        if hints:
            card.add_item(self._hint_section(report))

        gaps = report.trace_matrix.gaps
        card.add_item(Container(
            items=[TextBlock(
                text=f"Traceability gaps: {', '.join(gaps)}" if gaps else "Every loss scenario is covered.",
                wrap=True,
                color=types.Colors.ATTENTION if gaps else types.Colors.GOOD,
            )],
            separator=True,
        ))
        return card.create()

    def _summary_facts(self, report: Report) -> List[Fact]:
        summary = report.summary
        facts = [
            Fact(title="Profile", value=report.profile),
            Fact(title="Assets", value=", ".join(report.asset_topics) or "-"),
            Fact(title="Outsider paths", value=str(summary.outsider_count)),
            Fact(title="Insider paths", value=str(summary.insider_count)),
            Fact(title="Model", value=report.model_digest[:19]),
        ]
        if report.derived_flows is not None:
            facts.append(Fact(title="Derived flows", value=str(len(report.derived_flows))))
        return facts

    def _prefix_section(self, report: Report) -> Container:
        groups = report.entry_groups.get(Profile.OUTSIDER, ())
        rows = [self._row(g.entry, str(g.path_count), PATH_ARROW.join(g.common_prefix)) for g in groups[: self.max_groups]]
        if len(groups) > self.max_groups:
            rows.append(TextBlock(text=f"... {len(groups) - self.max_groups} more entries", is_subtle=True))
        return Container(
            items=[TextBlock(text="Outsider entries", weight=types.FontWeight.BOLDER)]
            + [self._row("Public element", "#Paths", "Prefix", header=True)]
            + rows,
            style=types.ContainerStyle.EMPHASIS,
            separator=True,
        )

    def _hint_section(self, report: Report) -> Container:
        hints = report.placement_hints[Profile.OUTSIDER][: self.max_groups]
        return Container(
            items=[TextBlock(text="Countermeasure placement", weight=types.FontWeight.BOLDER)]
            + [
                TextBlock(
                    text=f"{h.location}: {h.covered_path_count} paths from {', '.join(h.covered_entries)}",
                    wrap=True,
                )
                for h in hints
            ],
            separator=True,
        )

    @staticmethod
    def _row(first: str, second: str, third: str, header: bool = False) -> ColumnSet:
        weight = types.FontWeight.BOLDER if header else None
        return ColumnSet(columns=[
            Column(items=[TextBlock(text=first, weight=weight, wrap=True)], width=3),
            Column(items=[TextBlock(text=second, weight=weight)], width=1),
            Column(items=[TextBlock(text=third, weight=weight, wrap=True)], width=6),
        ])

    @staticmethod
    def get_json(card: AdaptiveCard) -> str:
        return card.to_json()
