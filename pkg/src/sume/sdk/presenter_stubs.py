"""Early-binding proxies for the Presenter library.

Generated from the library manifest (hash sha256:9913b4cd0cb3bffb685c8794a42c687dd9c74fa386a817412c6cd84ce3d84568); do not edit by hand.
Regenerate with: python -m sume.proxygen.stubs <lib.sidl> --python
"""

from sume.sdk.runtime import ProxyBase

MANIFEST_HASH = "sha256:9913b4cd0cb3bffb685c8794a42c687dd9c74fa386a817412c6cd84ce3d84568"


class PpSlideLayout:
    ppLayoutTitle = 1
    ppLayoutText = 2
    ppLayoutBlank = 12


class WindowState:
    ppWindowNormal = 1
    ppWindowMinimized = 2
    ppWindowMaximized = 3


class _Base(ProxyBase):
    _enums = frozenset(['PpSlideLayout', 'WindowState'])
    _interfaces = {}


class Application(_Base):
    INTERFACE = 'Application'

    def get_WindowState(self):
        return self._call(1, (), (), 'i4')

    def set_WindowState(self, value):
        return self._call(2, ('i4',), (value,), 'void')

    def get_Visible(self):
        return self._call(3, (), (), 'i4')

    def set_Visible(self, value):
        return self._call(4, ('i4',), (value,), 'void')

    def get_Presentations(self):
        return self._call(5, (), (), 'Presentations')

    def Quit(self):
        return self._call(6, (), (), 'void')


class Presentations(_Base):
    INTERFACE = 'Presentations'

    def Open(self, fileName, readOnly, untitled, withWindow):
        return self._call(1, ('string', 'i4', 'i4', 'i4'), (fileName, readOnly, untitled, withWindow), 'Presentation')

    def Item(self, index):
        return self._call(2, ('i4',), (index,), 'Presentation')

    def get_Count(self):
        return self._call(3, (), (), 'i4')


class Presentation(_Base):
    INTERFACE = 'Presentation'

    def get_SlideShowSettings(self):
        return self._call(1, (), (), 'SlideShowSettings')

    def get_Slides(self):
        return self._call(2, (), (), 'Slides')


class Slides(_Base):
    INTERFACE = 'Slides'

    def Add(self, index, layout):
        return self._call(1, ('i4', 'i4'), (index, layout), 'Slide')

    def get_Count(self):
        return self._call(2, (), (), 'i4')


class Slide(_Base):
    INTERFACE = 'Slide'

    def get_Layout(self):
        return self._call(1, (), (), 'i4')

    def get_Title(self):
        return self._call(2, (), (), 'string')

    def get_Body(self):
        return self._call(3, (), (), 'string')

    def get_Background(self):
        return self._call(4, (), (), 'string')


class SlideShowSettings(_Base):
    INTERFACE = 'SlideShowSettings'

    def Run(self):
        return self._call(1, (), (), 'SlideShowWindow')


class SlideShowWindow(_Base):
    INTERFACE = 'SlideShowWindow'

    def get_Width(self):
        return self._call(1, (), (), 'r4')

    def set_Width(self, value):
        return self._call(2, ('r4',), (value,), 'void')

    def get_Height(self):
        return self._call(3, (), (), 'r4')

    def set_Height(self, value):
        return self._call(4, ('r4',), (value,), 'void')

    def get_Left(self):
        return self._call(5, (), (), 'r4')

    def set_Left(self, value):
        return self._call(6, ('r4',), (value,), 'void')

    def get_Top(self):
        return self._call(7, (), (), 'r4')

    def set_Top(self, value):
        return self._call(8, ('r4',), (value,), 'void')

    def get_Id(self):
        return self._call(9, (), (), 'i4')

    def get_View(self):
        return self._call(10, (), (), 'SlideShowView')


class SlideShowView(_Base):
    INTERFACE = 'SlideShowView'

    def Next(self):
        return self._call(1, (), (), 'void')

    def Previous(self):
        return self._call(2, (), (), 'void')

    def GotoSlide(self, index):
        return self._call(3, ('i4',), (index,), 'void')

    def get_CurrentSlideIndex(self):
        return self._call(4, (), (), 'i4')

    def Exit(self):
        return self._call(5, (), (), 'void')

    def subscribe_SlideChanged(self, callback=None):
        return self._session.subscribe(self._ref, 'SlideChanged', callback)


class Wall(_Base):
    INTERFACE = 'Wall'

    def get_Revision(self):
        return self._call(1, (), (), 'i4')

    def SceneJson(self):
        return self._call(2, (), (), 'string')

    def ScreenPpm(self, screenIndex):
        return self._call(3, ('i4',), (screenIndex,), 'string')

    def ListDecks(self):
        return self._call(4, (), (), 'string')

    def SetWindowRect(self, windowId, x, y, w, h):
        return self._call(5, ('i4', 'i4', 'i4', 'i4', 'i4'), (windowId, x, y, w, h), 'void')

    def SetWindowZ(self, windowId, z):
        return self._call(6, ('i4', 'i4'), (windowId, z), 'void')

    def AdoptWindow(self, windowId):
        return self._call(7, ('i4',), (windowId,), 'void')

    def WindowNext(self, windowId):
        return self._call(8, ('i4',), (windowId,), 'void')

    def WindowPrevious(self, windowId):
        return self._call(9, ('i4',), (windowId,), 'void')

    def WindowGoto(self, windowId, index):
        return self._call(10, ('i4', 'i4'), (windowId, index), 'void')

    def WindowExit(self, windowId):
        return self._call(11, ('i4',), (windowId,), 'void')

    def subscribe_RevisionChanged(self, callback=None):
        return self._session.subscribe(self._ref, 'RevisionChanged', callback)

    def subscribe_WindowSlideChanged(self, callback=None):
        return self._session.subscribe(self._ref, 'WindowSlideChanged', callback)


_Base._interfaces.update({
    'Application': Application,
    'Presentations': Presentations,
    'Presentation': Presentation,
    'Slides': Slides,
    'Slide': Slide,
    'SlideShowSettings': SlideShowSettings,
    'SlideShowWindow': SlideShowWindow,
    'SlideShowView': SlideShowView,
    'Wall': Wall,
})

INTERFACES = _Base._interfaces

COCLASSES = {
    'Presenter.Application': 'Application',
    'Sume.Wall': 'Wall',
}
