from ._cvqa import *  # noqa: F401,F403
from ._cvqa import __doc__  # noqa: F401
