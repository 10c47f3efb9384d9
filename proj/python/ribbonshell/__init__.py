"""Mechanics of pre-strained multilayer ribbons: helices, self-contact and seashell shapes."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run_summary as _run_summary


def summary(spec, result):
    """Run summary as a dict, in the same key order the CLI writes."""
    return _json.loads(_run_summary(spec, result))
