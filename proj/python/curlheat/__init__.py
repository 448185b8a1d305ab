from ._curlheat import *  # noqa: F401,F403
