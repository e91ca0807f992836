"""Divisorial and stable divisorial gonality of multigraphs.

Graphs, divisors, certificates, programs and assignments are plain dicts in
the same JSON shapes the ``sdgon`` command line tool reads and writes.
"""

import json

from . import _core
from ._core import SdgonError

__all__ = [
    "SdgonError",
    "g1",
    "dgon",
    "sdgon",
    "make_cert",
    "validate",
    "build_ilp",
    "check_assignment",
    "solve_ilp",
    "magnitude_bound",
    "verify",
    "expand",
]


def _j(x):
    return json.dumps(x)


def g1(graph):
    """Every edge subdivided once; midpoints are named ``<edge>.m``."""
    return json.loads(_core.g1(_j(graph)))


def dgon(graph, k_max, cross_check=False):
    return json.loads(_core.dgon(_j(graph), k_max, cross_check))


def sdgon(graph, k_max, l_max):
    """Least dgon over subdivisions of G1 with edge lengths up to ``l_max``.

    Both caps are required. ``binding`` lists the caps that limit the answer.
    """
    return json.loads(_core.sdgon(_j(graph), k_max, l_max))


def make_cert(witness, k=None):
    return json.loads(_core.make_cert(_j(witness), -1 if k is None else k))


def validate(graph, certificate, base="graph"):
    return json.loads(_core.validate(_j(graph), _j(certificate), base))


def build_ilp(graph, certificate, base="graph"):
    return json.loads(_core.build_ilp(_j(graph), _j(certificate), base))


def check_assignment(instance, assignment):
    return json.loads(_core.check_assignment(_j(instance), _j(assignment)))


def solve_ilp(instance, cap=1 << 16):
    """Least assignment with values in [1, cap], or None."""
    return json.loads(_core.solve_ilp(_j(instance), cap))


def magnitude_bound(instance):
    b = json.loads(_core.magnitude_bound(_j(instance)))
    b["bound"] = int(b["bound"])
    return b


def verify(graph, certificate, assignment, k=None, base="graph", audit=False):
    return json.loads(
        _core.verify(_j(graph), _j(certificate), _j(assignment), -1 if k is None else k, base, audit)
    )


def expand(graph, certificate, assignment, base="graph", strict=False):
    return json.loads(_core.expand(_j(graph), _j(certificate), _j(assignment), base, strict))
