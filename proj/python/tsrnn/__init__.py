"""Two-stream recurrent skeleton action recognition."""

try:
    from ._tsrnn import *  # noqa: F401,F403  (installed package layout)
    from ._tsrnn import __doc__  # noqa: F401
except ImportError:  # in-tree use: the built module sits on sys.path directly
    from _tsrnn import *  # noqa: F401,F403
    from _tsrnn import __doc__  # noqa: F401

__version__ = "0.1.0"
