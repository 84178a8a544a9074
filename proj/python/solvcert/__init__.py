"""Exact 1-solvability criteria for algebraically slice knots."""

import json as _json

from ._solvcert import (
    InvalidSeifertMatrix,
    SpecError,
    __version__,
    alexander_polynomial,
    arf,
    det,
    difference_operator,
    smith_normal_form,
    wedge_power,
    z_image_membership,
)
from . import _solvcert


def check(spec, criterion="auto", timestamp=None):
    """Certify a KnotSpec dict; returns the certificate document as a dict."""
    return _json.loads(_solvcert.check_json(_json.dumps(spec), criterion, timestamp))


def verify(doc):
    """Re-check a certificate document produced by check()."""
    return _solvcert.verify_json(_json.dumps(doc))


def plan(spec):
    """Move plan for a block-form spec with a fully known profile."""
    return _json.loads(_solvcert.plan_json(_json.dumps(spec)))


def batch(specs, jobs=1):
    """Certify a list of KnotSpec dicts and summarize."""
    return _json.loads(_solvcert.batch_json(_json.dumps(list(specs)), jobs))


__all__ = [
    "InvalidSeifertMatrix",
    "SpecError",
    "__version__",
    "alexander_polynomial",
    "arf",
    "batch",
    "check",
    "det",
    "difference_operator",
    "plan",
    "smith_normal_form",
    "verify",
    "wedge_power",
    "z_image_membership",
]
