"""SDK binding modes: shipped stubs, manifest-built proxies, late binding."""

import pytest

from sume.idl import parse_idl
from sume.orb import BridgeFault, wire
from sume.presenter import presenter_idl_text
from sume.proxygen import generate_manifest
from sume.sdk import LateBound, build_proxy_classes, open_application
from sume.sdk.runtime import to_wire


def test_to_wire_conversions():
    enums = frozenset({"Color"})
    assert to_wire(2, "i4", enums) == wire.i4(2)
    assert to_wire(1.5, "r4", enums) == wire.r4(1.5)
    assert to_wire("x", "string", enums) == wire.string("x")
    assert to_wire(True, "bool", enums) == wire.boolean(True)
    assert to_wire(7, "Color", enums) == wire.i4(7)
    assert to_wire(None, "Thing", enums) == wire.null()
    assert to_wire(wire.i8(1), "i8", enums) == wire.i8(1)


def test_dynamic_proxies_match_shipped(session):
    manifest = generate_manifest(parse_idl(presenter_idl_text()))
    classes = build_proxy_classes(manifest)
    ref = session.activate("Presenter.Application")
    app = classes["Application"](session, ref)
    app.set_WindowState(2)
    assert app.get_WindowState() == 2
    pres = app.get_Presentations()
    assert type(pres).__name__ == "Presentations"
    assert pres.get_Count() == 0


def test_dynamic_proxy_arity_check(session):
    manifest = generate_manifest(parse_idl(presenter_idl_text()))
    classes = build_proxy_classes(manifest)
    app = classes["Application"](session, session.activate("Presenter.Application"))
    with pytest.raises(TypeError):
        app.set_WindowState()


def test_late_binding_full_flow(session):
    app = LateBound(session, session.activate("Presenter.Application"))
    app.set_WindowState(2)
    assert app.get_WindowState() == 2
    app.set_Visible(1)
    presentations = app.get_Presentations()
    p = presentations.Open("presentation.deck", 0, 0, 0)
    assert presentations.get_Count() == 1
    win = p.get_SlideShowSettings().Run()
    win.set_Width(wire.r4(50.0))          # r4 members need explicit wire values
    assert win.get_Width() == pytest.approx(50.0)


def test_late_binding_unknown_member(session):
    app = LateBound(session, session.activate("Presenter.Application"))
    with pytest.raises(BridgeFault) as exc:
        app.Frobnicate()
    assert exc.value.code == wire.E_MEMBER_NOT_FOUND


def test_late_binding_equivalent_to_early(session):
    early = open_application(session)
    late = LateBound(session, early.ref)
    late.set_WindowState(3)
    assert early.get_WindowState() == 3
    early.set_WindowState(1)
    assert late.get_WindowState() == 1
