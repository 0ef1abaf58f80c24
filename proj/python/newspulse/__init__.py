"""News novelty/topicality indicators and intraday market response."""

from newspulse._core import *  # noqa: F401,F403
from newspulse._core import __version__  # noqa: F401
