"""Brute-force reference implementations used by the tests."""
from __future__ import annotations

import itertools

from surf.core import ClosureViolation, validate_subobject


def all_raw_candidates(bg):
    elements = [(c, k) for c in bg.components for k in bg.elements[c]]
    for bits in itertools.product((False, True), repeat=len(elements)):
        raw = {c: [] for c in bg.components}
        for (c, k), on in zip(elements, bits):
            if on:
                raw[c].append(k)
        yield raw


def brute_subobjects(bg):
    """Every element subset that passes validation."""
    found = []
    for raw in all_raw_candidates(bg):
        try:
            found.append(validate_subobject(bg, raw))
        except ClosureViolation:
            pass
    return found


def definitional_result(reactions, t):
    """res(t) spelled out from the definition, without indexes."""
    out = {c: set() for c in t.background.components}
    for a in reactions:
        enabled = a.reactant <= t and (t & a.inhibitor) <= a.inhibitor_core
        if enabled:
            for c, part in a.product.items():
                out[c] |= part
    return validate_subobject(t.background, out)
