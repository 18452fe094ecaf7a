"""Exact verification of Dwork-type q-congruences and p-adic supercongruences."""

import json

from . import _qdwork
from ._qdwork import ConstraintError, UnknownStatement

__all__ = ["ConstraintError", "UnknownStatement", "catalog", "dwork_check", "gamma_p", "sweep",
           "verify_q", "verify_super"]


def verify_q(id, n, r=1, d=1, m=1, s=1, k=0, engine="local"):
    return json.loads(_qdwork.verify_q(id, n, r, d, m, s, k, engine))


def verify_super(id, p, r=1, d=1, m=1):
    return json.loads(_qdwork.verify_super(id, p, r, d, m))


def catalog():
    return json.loads(_qdwork.catalog())


def sweep(config_text):
    return json.loads(_qdwork.sweep(config_text))


def gamma_p(x, p, precision):
    """Gamma_p(x) mod p^precision as an int; x is an int or an "a/b" string."""
    return int(_qdwork.gamma_p(str(x), p, precision))


def dwork_check(family, p, r):
    return json.loads(_qdwork.dwork_check(family, p, r))
