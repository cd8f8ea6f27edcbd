"""Delivery of summary cards."""

from .delivery_manager import DeliveryManager

__all__ = ['DeliveryManager']
