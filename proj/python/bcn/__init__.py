"""Combinatorial Burnside groups BC_n(G) of finite permutation groups.

Groups are catalog names ("S4", "D6", "He3", "C2xS3", ...) or generator
lists in cycle notation ("(1,2,3),(1,2)").  Results are plain dicts.
"""

import json

from . import _bcn
from ._bcn import ParseError, ResourceError

__all__ = ["ParseError", "ResourceError", "group_order", "bc", "bc_prime", "verify", "cd", "class_order",
           "restrict", "basis", "pair_classes", "reproduce", "d6_class"]


def group_order(group):
    return _bcn.group_order(group)


def bc(group, n, tier="desk", threads=1):
    return json.loads(_bcn.bc(group, n, "bc", tier, threads))


def bc_prime(group, n, tier="desk", threads=1):
    return json.loads(_bcn.bc(group, n, "bcprime", tier, threads))


def verify(group, n, corrupt_psi=False, threads=1):
    return json.loads(_bcn.verify(group, n, corrupt_psi, threads))


def cd(group, coefficients="Z", p=0, threads=1):
    return json.loads(_bcn.cd(group, coefficients, p, threads))


def _terms(terms):
    return terms if isinstance(terms, str) else json.dumps(terms)


def class_order(group, n, terms):
    """terms: list of {"coeff", "H", "Y", "beta"} (see `basis` for beta coordinates)."""
    return json.loads(_bcn.class_order(group, n, _terms(terms)))["order"]


def restrict(group, subgroup, n, terms):
    return json.loads(_bcn.restrict(group, list(subgroup), n, _terms(terms)))


def basis(group, subgroup=()):
    return json.loads(_bcn.basis(group, list(subgroup)))


def pair_classes(group):
    return json.loads(_bcn.pair_classes(group))


def reproduce(table="all", tier="desk", threads=1):
    return json.loads(_bcn.reproduce(table, tier, threads))


def d6_class():
    """The shipped 2-torsion class in BC_2(D6)."""
    return json.loads(_bcn.embedded_file("d6_class.json"))
