from ._qeve import *  # noqa: F401,F403
from ._qeve import __doc__  # noqa: F401
