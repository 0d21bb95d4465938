"""Operator-facing HTTP/SSE gateway."""

from .app import Gateway, GatewayCore

__all__ = ["Gateway", "GatewayCore"]
