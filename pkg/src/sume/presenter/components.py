"""Automation components hosted by the videoserver.

Application / Presentations / Presentation / Slides / Slide /
SlideShowSettings / SlideShowWindow / SlideShowView mirror the classic
slideshow automation surface; WallControl exposes the wall itself. Instances
are created per activation and dispatched by the orb server, which wraps
interface-typed return values as object references.

Ownership: every wall window created through an Application belongs to it
and dies with it (Quit, release of the last reference, connection close)
unless the window has been adopted server-side via Wall.AdoptWindow, after
which it survives its creator and is steered through wall-level verbs.
"""

from __future__ import annotations

import base64
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..orb import wire
from ..orb.wire import AppFault, BridgeFault, E_OBJECT_NOT_FOUND
from ..wall.model import DeckContent, SlideFace, WallModel, color_hex, round_half_away, scene_json
from ..wall.raster import render_ppm
from .deck import Deck, DeckSlide, LAYOUT_VALUES, DeckError, blank_slide, load_deck


@dataclass
class ServerContext:
    wall: WallModel
    content_root: Path
    window_owners: dict = field(default_factory=dict)   # window id -> Application
    raise_event: object = None                           # set by the orb server

    def emit(self, instance, event_name: str, args: list) -> None:
        if self.raise_event is not None:
            self.raise_event(instance, event_name, args)


class Component:
    interface: str = ""

    def __init__(self, ctx: ServerContext):
        self.ctx = ctx
        self.alive = True

    def _kill(self) -> None:
        self.alive = False

    def _finalize(self) -> None:
        """Called by the orb server when the last reference is gone."""


def _gone():
    return BridgeFault(E_OBJECT_NOT_FOUND, "object is gone")


def _faces(slides: list[DeckSlide]) -> list[SlideFace]:
    return [
        SlideFace(s.layout, s.title, s.body, s.effective_background)
        for s in slides
    ]


class Application(Component):
    interface = "Application"

    def __init__(self, ctx: ServerContext):
        super().__init__(ctx)
        self.window_state = 1
        self.visible = 0
        self.owned_windows: set[int] = set()
        self._children: list[Component] = []
        self._presentations = Presentations(self)

    def _adopt_child(self, child: "Component") -> "Component":
        self._children.append(child)
        return child

    def _register_window(self, window_id: int) -> None:
        self.owned_windows.add(window_id)
        self.ctx.window_owners[window_id] = self

    def _drop_window(self, window_id: int) -> None:
        self.owned_windows.discard(window_id)
        self.ctx.window_owners.pop(window_id, None)

    # members

    def get_WindowState(self) -> int:
        return self.window_state

    def set_WindowState(self, value: int) -> None:
        # minimizing the shell does not hide slideshow windows
        if value not in (1, 2, 3):
            raise AppFault("WindowState must be 1, 2 or 3")
        self.window_state = value

    def get_Visible(self) -> int:
        return self.visible

    def set_Visible(self, value: int) -> None:
        if value not in (0, 1):
            raise AppFault("Visible must be 0 or 1")
        self.visible = value
        for wid in sorted(self.owned_windows):
            if self.ctx.wall.has_window(wid):
                self.ctx.wall.set_visible(wid, value == 1)

    def get_Presentations(self) -> "Presentations":
        return self._presentations

    def Quit(self) -> None:
        for wid in sorted(self.owned_windows):
            if self.ctx.wall.has_window(wid):
                self.ctx.wall.remove_window(wid)
            self.ctx.window_owners.pop(wid, None)
        self.owned_windows.clear()
        for child in self._children:
            child._kill()
        self._presentations._kill()
        self._kill()

    def _finalize(self) -> None:
        if self.alive:
            self.Quit()


class Presentations(Component):
    interface = "Presentations"

    def __init__(self, app: Application):
        super().__init__(app.ctx)
        self.app = app
        self.items: list[Presentation] = []

    def Open(self, file_name: str, read_only: int, untitled: int, with_window: int) -> "Presentation":
        root = self.ctx.content_root
        path = (root / file_name).resolve()
        if not path.is_relative_to(root.resolve()) or not path.is_file():
            raise AppFault(f"file not found: {file_name}", detail="open")
        try:
            deck = load_deck(path)
        except DeckError as e:
            raise AppFault(str(e), detail="deck") from None
        pres = self.app._adopt_child(Presentation(self.app, deck, read_only, untitled))
        self.items.append(pres)
        if with_window == 1:
            _, _, sw, sh = self.ctx.wall.cfg.screen_rect(0)
            wid = self.ctx.wall.place_window(
                0, 0, sw, sh,
                DeckContent(deck.title, _faces(deck.slides), slideshow=False),
                visible=self.app.visible == 1,
            )
            self.app._register_window(wid)
        return pres

    def Item(self, index: int) -> "Presentation":
        if not 1 <= index <= len(self.items):
            raise AppFault("index out of range")
        return self.items[index - 1]

    def get_Count(self) -> int:
        return len(self.items)


class Presentation(Component):
    interface = "Presentation"

    def __init__(self, app: Application, deck: Deck, read_only: int = 0, untitled: int = 0):
        super().__init__(app.ctx)
        self.app = app
        self.deck = deck
        self.read_only = read_only   # accepted, no v1 behavior
        self.untitled = untitled
        self._settings = app._adopt_child(SlideShowSettings(self))
        self._slides = app._adopt_child(Slides(self))

    def get_SlideShowSettings(self) -> "SlideShowSettings":
        return self._settings

    def get_Slides(self) -> "Slides":
        return self._slides


class Slides(Component):
    interface = "Slides"

    def __init__(self, presentation: Presentation):
        super().__init__(presentation.ctx)
        self.presentation = presentation

    def Add(self, index: int, layout: int) -> "Slide":
        slides = self.presentation.deck.slides
        if not 1 <= index <= len(slides) + 1:
            raise AppFault("index out of range")
        if layout not in LAYOUT_VALUES:
            raise AppFault(f"unknown layout: {layout}")
        new = blank_slide(layout)
        slides.insert(index - 1, new)
        return self.presentation.app._adopt_child(Slide(self.presentation, new))

    def get_Count(self) -> int:
        return len(self.presentation.deck.slides)


class Slide(Component):
    interface = "Slide"

    def __init__(self, presentation: Presentation, data: DeckSlide):
        super().__init__(presentation.ctx)
        self.data = data

    def get_Layout(self) -> int:
        return self.data.layout

    def get_Title(self) -> str:
        return self.data.title

    def get_Body(self) -> str:
        return self.data.body

    def get_Background(self) -> str:
        return color_hex(self.data.effective_background)


class SlideShowSettings(Component):
    interface = "SlideShowSettings"

    def __init__(self, presentation: Presentation):
        super().__init__(presentation.ctx)
        self.presentation = presentation

    def Run(self) -> "SlideShowWindow":
        deck = self.presentation.deck
        if not deck.slides:
            raise AppFault("no slides")
        app = self.presentation.app
        _, _, sw, sh = self.ctx.wall.cfg.screen_rect(0)
        # the running show keeps the slide list as of Run()
        content = DeckContent(deck.title, _faces(deck.slides), slideshow=True)
        wid = self.ctx.wall.place_window(0, 0, sw, sh, content, visible=app.visible == 1)
        app._register_window(wid)
        return app._adopt_child(SlideShowWindow(app, wid))


class SlideShowWindow(Component):
    interface = "SlideShowWindow"

    def __init__(self, app: Application, window_id: int):
        super().__init__(app.ctx)
        self.app = app
        self.window_id = window_id
        self._view: SlideShowView | None = None

    def _geometry(self):
        if not self.ctx.wall.has_window(self.window_id):
            raise _gone()
        return self.ctx.wall.geometry(self.window_id)

    def _set_field(self, name: str, value: float) -> None:
        if not self.ctx.wall.has_window(self.window_id):
            raise _gone()
        px = round_half_away(value)
        try:
            self.ctx.wall.set_geometry_field(self.window_id, name, px)
        except ValueError as e:
            raise AppFault(str(e)) from None

    def get_Width(self) -> float:
        return float(self._geometry()[2])

    def set_Width(self, value: float) -> None:
        self._set_field("width", value)

    def get_Height(self) -> float:
        return float(self._geometry()[3])

    def set_Height(self, value: float) -> None:
        self._set_field("height", value)

    def get_Left(self) -> float:
        return float(self._geometry()[0])

    def set_Left(self, value: float) -> None:
        self._set_field("left", value)

    def get_Top(self) -> float:
        return float(self._geometry()[1])

    def set_Top(self, value: float) -> None:
        self._set_field("top", value)

    def get_Id(self) -> int:
        return self.window_id

    def get_View(self) -> "SlideShowView":
        if not self.ctx.wall.has_window(self.window_id):
            raise _gone()
        if self._view is None or not self._view.alive:
            self._view = self.app._adopt_child(SlideShowView(self))
        return self._view


class SlideShowView(Component):
    interface = "SlideShowView"

    def __init__(self, window: SlideShowWindow):
        super().__init__(window.ctx)
        self.window = window
        self.window_id = window.window_id
        self._listener = self._on_wall_event
        self.ctx.wall.add_listener(self._listener)

    def _on_wall_event(self, kind: str, *payload) -> None:
        if kind == "slide" and payload[0] == self.window_id and self.alive:
            self.ctx.emit(self, "SlideChanged", [wire.i4(payload[1])])

    def _kill(self) -> None:
        self.ctx.wall.remove_listener(self._listener)
        super()._kill()

    def _finalize(self) -> None:
        # last reference gone: stop listening; the window itself lives on
        self._kill()

    def _wall(self) -> WallModel:
        if not self.ctx.wall.has_window(self.window_id):
            raise _gone()
        return self.ctx.wall

    def Next(self) -> None:
        wall = self._wall()
        idx = wall.slide_index(self.window_id)
        if idx < wall.slide_count(self.window_id):
            wall.set_slide_index(self.window_id, idx + 1)

    def Previous(self) -> None:
        wall = self._wall()
        idx = wall.slide_index(self.window_id)
        if idx > 1:
            wall.set_slide_index(self.window_id, idx - 1)

    def GotoSlide(self, index: int) -> None:
        wall = self._wall()
        try:
            wall.set_slide_index(self.window_id, index)
        except IndexError:
            raise AppFault("index out of range") from None

    def get_CurrentSlideIndex(self) -> int:
        return self._wall().slide_index(self.window_id)

    def Exit(self) -> None:
        wall = self._wall()
        wall.remove_window(self.window_id)
        self.window.app._drop_window(self.window_id)
        self.window._kill()
        self._kill()


class WallControl(Component):
    interface = "Wall"

    def __init__(self, ctx: ServerContext):
        super().__init__(ctx)
        self._listener = self._on_wall_event
        ctx.wall.add_listener(self._listener)

    def _on_wall_event(self, kind: str, *payload) -> None:
        if not self.alive:
            return
        if kind == "revision":
            self.ctx.emit(self, "RevisionChanged", [wire.i4(payload[0])])
        elif kind == "slide":
            self.ctx.emit(self, "WindowSlideChanged",
                          [wire.i4(payload[0]), wire.i4(payload[1])])

    def _kill(self) -> None:
        self.ctx.wall.remove_listener(self._listener)
        super()._kill()

    def _finalize(self) -> None:
        self._kill()

    def _window(self, window_id: int) -> None:
        if not self.ctx.wall.has_window(window_id):
            raise AppFault(f"unknown window: {window_id}", detail="unknown-window")

    # members

    def get_Revision(self) -> int:
        return self.ctx.wall.revision

    def SceneJson(self) -> str:
        return scene_json(self.ctx.wall.snapshot())

    def ScreenPpm(self, screen_index: int) -> str:
        try:
            ppm = render_ppm(self.ctx.wall.snapshot(), screen_index)
        except ValueError as e:
            raise AppFault(str(e)) from None
        return base64.b64encode(ppm).decode("ascii")

    def ListDecks(self) -> str:
        root = self.ctx.content_root
        names = sorted(
            p.relative_to(root).as_posix()
            for p in root.rglob("*.deck") if p.is_file()
        )
        return json.dumps(names)

    def SetWindowRect(self, window_id: int, x: int, y: int, w: int, h: int) -> None:
        self._window(window_id)
        try:
            self.ctx.wall.set_rect(window_id, x, y, w, h)
        except ValueError as e:
            raise AppFault(str(e)) from None

    def SetWindowZ(self, window_id: int, z: int) -> None:
        self._window(window_id)
        self.ctx.wall.set_z(window_id, z)

    def AdoptWindow(self, window_id: int) -> None:
        self._window(window_id)
        owner = self.ctx.window_owners.pop(window_id, None)
        if owner is not None:
            owner.owned_windows.discard(window_id)

    def _transport(self, window_id: int):
        self._window(window_id)
        try:
            return (self.ctx.wall.slide_index(window_id),
                    self.ctx.wall.slide_count(window_id))
        except ValueError as e:
            raise AppFault(str(e)) from None

    def WindowNext(self, window_id: int) -> None:
        idx, count = self._transport(window_id)
        if idx < count:
            self.ctx.wall.set_slide_index(window_id, idx + 1)

    def WindowPrevious(self, window_id: int) -> None:
        idx, _ = self._transport(window_id)
        if idx > 1:
            self.ctx.wall.set_slide_index(window_id, idx - 1)

    def WindowGoto(self, window_id: int, index: int) -> None:
        self._transport(window_id)
        try:
            self.ctx.wall.set_slide_index(window_id, index)
        except IndexError:
            raise AppFault("index out of range") from None

    def WindowExit(self, window_id: int) -> None:
        self._window(window_id)
        self.ctx.wall.remove_window(window_id)
        owner = self.ctx.window_owners.pop(window_id, None)
        if owner is not None:
            owner.owned_windows.discard(window_id)


def component_factories(ctx: ServerContext) -> dict:
    return {
        "Presenter.Application": lambda: Application(ctx),
        "Sume.Wall": lambda: WallControl(ctx),
    }
