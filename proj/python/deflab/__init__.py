"""Exact verification engine for default-time filtration models.

Thin wrapper over the native module; all payloads are JSON strings with
rationals serialized as "p/q" so nothing is ever rounded.
"""

import json as _json
import os as _os
import sys as _sys

try:
    from ._deflab import (  # type: ignore[import-not-found]
        DeflabError,
        analyze,
        certificate,
        fixture,
        g_deflator_feasible,
        generate,
        infer,
        suites,
        verify,
    )
except ImportError:  # pragma: no cover - development tree: module next to build dir
    _module_dir = _os.environ.get("DEFLAB_MODULE_DIR")
    if _module_dir and _module_dir not in _sys.path:
        _sys.path.insert(0, _module_dir)
    from _deflab import (  # type: ignore[import-not-found]
        DeflabError,
        analyze,
        certificate,
        fixture,
        g_deflator_feasible,
        generate,
        infer,
        suites,
        verify,
    )

__all__ = [
    "DeflabError",
    "analyze",
    "analyze_dict",
    "certificate",
    "certificate_dict",
    "fixture",
    "fixture_dict",
    "g_deflator_feasible",
    "generate",
    "infer",
    "suites",
    "verify",
    "verify_dict",
]


def fixture_dict(name):
    return _json.loads(fixture(name))


def analyze_dict(model_json):
    return _json.loads(analyze(model_json))


def certificate_dict(model_json):
    return _json.loads(certificate(model_json))


def verify_dict(suite, models=50, seed=1):
    return _json.loads(verify(suite, models, seed))
