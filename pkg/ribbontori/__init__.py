# ribbontori/__init__.py
# Clasificarea torilor lorentzieni cu camp Killing modelati pe panglici f(y) dx^2 + 2 dx dy

from .config import Config

__version__ = Config.TOOL_VERSION

__all__ = ['Config', '__version__']
