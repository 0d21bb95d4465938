"""Remote-object protocol: wire format, client session, server runtime."""

from . import wire
from .client import ObjectRef, Session, SessionClosed, Subscription, connect, connect_endpoint
from .registry import ComponentRegistry
from .server import OrbServer
from .wire import AppFault, BridgeFault, ProtocolError

__all__ = [
    "AppFault",
    "BridgeFault",
    "ComponentRegistry",
    "ObjectRef",
    "OrbServer",
    "ProtocolError",
    "Session",
    "SessionClosed",
    "Subscription",
    "connect",
    "connect_endpoint",
    "wire",
]
