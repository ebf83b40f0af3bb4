"""Independent reference formulas used by the tests."""

from __future__ import annotations

from graphbraid.config_complex import a_term, is_critical
from graphbraid.errors import GraphBraidError


def _term(t, v: int, k: int, other: int, n: int):
    """The 1-cell V_k(delta_k + delta_other), or None when it is not critical."""
    if not 1 <= other < k:
        return None
    a = [0] * len(t.children[v])
    a[k - 1] += 1
    a[other - 1] += 1
    try:
        c = a_term(t, v, k, a, n)
    except GraphBraidError:
        return None
    return c if is_critical(t, c) else None


def two_deleted_boundary(t, d: int, d2: int, n: int) -> dict:
    """Closed form for the Morse boundary of d u d' (both deleted, ends of valency two)."""
    if t.tau(d) > t.tau(d2):
        d, d2 = d2, d
    td, id_ = t.ends(d)
    t2, i2 = t.ends(d2)
    A, B, C, D = t.meet(t2, td), t.meet(t2, id_), t.meet(i2, td), t.meet(i2, id_)
    g = t.branch
    if id_ < t2:
        terms = [
            (1, A, g(A, t2), g(A, td)),
            (-1, B, g(B, t2), g(B, id_)),
            (-1, C, g(C, i2), g(C, td)),
            (1, D, g(D, i2), g(D, id_)),
        ]
    elif i2 < id_:
        terms = [
            (-1, A, g(A, t2), g(A, td)),
            (-1, B, g(B, id_), g(B, t2)),
            (1, C, g(C, i2), g(C, td)),
            (1, D, g(D, id_), g(D, i2)),
        ]
    else:
        terms = [
            (1, A, g(A, t2), g(A, td)),
            (1, B, g(B, id_), g(B, t2)),
            (-1, C, g(C, i2), g(C, td)),
            (1, D, g(D, i2), g(D, id_)),
        ]
    out: dict = {}
    for s, v, k, other in terms:
        c = _term(t, v, k, other, n)
        if c is not None:
            out[c] = out.get(c, 0) + s
    return {c: x for c, x in out.items() if x}
