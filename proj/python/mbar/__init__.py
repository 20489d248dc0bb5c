"""Stable graphs, Dyer-Lashof homology and Betti-number lower bounds for
moduli of stable curves.

Graphs are plain dicts in the JSON layout used by the command-line tool:
``{"vertices": [...], "half_edges": H, "sigma": [...], "tau": [...], "legs": {...}}``.
"""

import json as _json

from . import _mbar
from ._mbar import (
    classifying_space_series,
    c_best,
    c_real,
    d_plus,
    enumerate_dl_basis,
    enumerate_elementary,
    free_graded_commutative,
    qx_homology_series,
    series_mul,
    sigma_quotient_range,
    thom_generator_dims,
    wreath_order,
)

__version__ = "0.1.0"


def _dump(graph):
    return graph if isinstance(graph, str) else _json.dumps(graph)


def _ints(mapping):
    return {int(k): int(v) for k, v in mapping.items()}


def validate(graph):
    """None if the graph is a valid stable graph, else the first violation."""
    return _mbar.validate(_dump(graph))


def genus(graph):
    return _mbar.genus(_dump(graph))


def contract_edges(graph, edges):
    return _json.loads(_mbar.contract_edges(_dump(graph), list(edges)))


def cut_edges(graph, edges):
    return _json.loads(_mbar.cut_edges(_dump(graph), list(edges)))


def delete_edges(graph, edges):
    return _json.loads(_mbar.delete_edges(_dump(graph), list(edges)))


def canonical_form(graph):
    return _mbar.canonical_form(_dump(graph))


def is_isomorphic(a, b):
    return _mbar.is_isomorphic(_dump(a), _dump(b))


def automorphisms(graph):
    """(order, generators) of the automorphism group."""
    return _mbar.automorphisms(_dump(graph))


def enumerate_stable_graphs(g, n, max_edges=None, jobs=1):
    """[(canonical encoding, graph dict)] sorted by edge count, then encoding."""
    return [(c, _json.loads(s)) for c, s in _mbar.enumerate_stable_graphs(g, n, max_edges, jobs)]


def dl_words(deg_x, p, cap, convention="strict"):
    return [_json.loads(w) for w in _mbar.dl_words(deg_x, p, cap, convention)]


def betti_lower_bounds(g, n, A, ell="", characteristic=0, cap=10, convention="strict"):
    report = _json.loads(_mbar.betti_lower_bounds(g, n, A, ell, characteristic, cap, convention))
    report["bounds"] = _ints(report["bounds"])
    return report


def best_bounds(g, n, characteristic=0, cap=10, convention="strict", jobs=1):
    report = _json.loads(_mbar.best_bounds(g, n, characteristic, cap, convention, jobs))
    report["bounds"] = _ints(report["bounds"])
    report["witnesses"] = {int(k): v for k, v in report["witnesses"].items()}
    return report


def build_test_graph(g, n, A, ell, m):
    return _json.loads(_mbar.build_test_graph(g, n, A, ell, list(m)))


def cli(*args):
    """Run the command-line tool in-process; returns (status, stdout, stderr)."""
    if len(args) == 1 and isinstance(args[0], (list, tuple)):
        args = args[0]
    return _mbar.cli([str(a) for a in args])
