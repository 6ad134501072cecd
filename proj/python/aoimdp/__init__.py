"""Python surface of the AoI-MDP simulation laboratory."""

try:
    from ._aoimdp import *  # noqa: F401,F403
    from . import _aoimdp as _core  # noqa: F401
except ImportError:  # in-build-tree usage, module next to the package
    from _aoimdp import *  # noqa: F401,F403
    import _aoimdp as _core  # noqa: F401

__all__ = [name for name in dir(_core) if not name.startswith("_")]
