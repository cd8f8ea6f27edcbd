"""Deliver analysis summary cards to a Teams incoming webhook."""

from typing import Any, Dict, Optional

import structlog
from adaptive_cards.card import AdaptiveCard
from adaptive_cards.client import TeamsClient
from requests import RequestException, Response

from soa_threat_toolkit.reporting.card_builder import CardValidator

logger = structlog.get_logger(__name__)


class DeliveryManager:
    """Validate and post summary cards."""

    def __init__(self, webhook_url: Optional[str] = None):
        """
        Args:
            webhook_url: Teams incoming webhook URL; may be set later.
        """
        self.webhook_url = webhook_url
        self.validator = CardValidator()
        self.client = TeamsClient(webhook_url) if webhook_url else None

    def set_webhook_url(self, webhook_url: str) -> None:
        self.webhook_url = webhook_url
        self.client = TeamsClient(webhook_url)

    def send(self, card: AdaptiveCard, validate: bool = True) -> Dict[str, Any]:
        """Send a card to the webhook.

        Args:
            card: The AdaptiveCard to send.
            validate: Whether to validate the card before sending.

        Returns:
            ``success`` and ``message``, the HTTP ``status_code`` (None when
            nothing was posted) and, when validated, the CardValidator result
            under ``validation``.
        """
        if not self.client:
            return {
                "success": False,
                "status_code": None,
                "message": "No webhook URL configured for the summary card",
            }

        result: Dict[str, Any] = {"status_code": None}
        if validate:
            validation = self.validator.validate(card)
            result["validation"] = validation
            if not validation["valid"]:
                result["success"] = False
                result["message"] = "Summary card validation failed: " + ", ".join(str(d) for d in validation["details"])
                logger.warning("card_invalid", details=validation["details"], size_kb=validation["size"])
                return result

        try:
            response: Response = self.client.send(card)
        except RequestException as e:
            result["success"] = False
            result["message"] = f"Webhook unreachable: {e}"
            logger.error("card_delivery_error", error=str(e))
            return result

        result["success"] = 200 <= response.status_code < 300
        result["status_code"] = response.status_code
        result["message"] = "Summary card posted" if result["success"] else f"Delivery failed: {response.text}"
        logger.info("card_delivered", status_code=response.status_code, success=result["success"])
        return result
