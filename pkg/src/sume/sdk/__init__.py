"""Client SDK: session plus early- and late-binding proxies."""

from ..orb import BridgeFault, ObjectRef, Session, connect, connect_endpoint
from .runtime import LateBound, ProxyBase, build_proxy_classes, from_wire, to_wire


def open_application(session: Session):
    """Activate the slideshow application and wrap it in the shipped proxies."""
    from . import presenter_stubs

    ref = session.activate("Presenter.Application")
    return presenter_stubs.Application(session, ref)


def open_wall(session: Session):
    from . import presenter_stubs

    ref = session.activate("Sume.Wall")
    return presenter_stubs.Wall(session, ref)


__all__ = [
    "BridgeFault",
    "LateBound",
    "ObjectRef",
    "ProxyBase",
    "Session",
    "build_proxy_classes",
    "connect",
    "connect_endpoint",
    "from_wire",
    "open_application",
    "open_wall",
    "to_wire",
]
