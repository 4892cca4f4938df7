"""Multi-index bookkeeping for exterior algebras.

A k-form over an n-dimensional space is a coordinate vector over the basis
of strictly increasing multi-indices in lexicographic order.  During
construction forms are handled sparsely as dicts {multi-index: scalar}.
"""

from __future__ import annotations

from itertools import combinations

from .exact import ONE, ZERO

_BASIS_CACHE: dict = {}


def basis_tuples(n: int, k: int):
    """Strictly increasing k-tuples from 1..n, lexicographically ordered."""
    key = (n, k)
    if key not in _BASIS_CACHE:
        tuples = list(combinations(range(1, n + 1), k))
        index = {t: pos for pos, t in enumerate(tuples)}
        _BASIS_CACHE[key] = (tuples, index)
    return _BASIS_CACHE[key]


def merge_sign(a: tuple, b: tuple):
    """Merge two disjoint sorted tuples; return (sign, merged) or (0, None).

    The sign is the parity of the shuffle sorting the concatenation a + b.
    """
    out = []
    sign = 1
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        x, y = a[i], b[j]
        if x == y:
            return 0, None
        if x < y:
            out.append(x)
            i += 1
        else:
            # b[j] jumps over the remaining la - i entries of a
            if (la - i) % 2:
                sign = -sign
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


def sparse_wedge(f: dict, g: dict) -> dict:
    """Wedge product of two sparse forms (dicts {multi-index: scalar})."""
    out: dict = {}
    for ta, ca in f.items():
        if not ca:
            continue
        for tb, cb in g.items():
            if not cb:
                continue
            sign, merged = merge_sign(ta, tb)
            if sign == 0:
                continue
            term = ca * cb
            if sign < 0:
                term = -term
            prev = out.get(merged)
            out[merged] = term if prev is None else prev + term
    return {t: c for t, c in out.items() if c}


def sparse_wedge_list(factors) -> dict:
    """Wedge a list of sparse 1-forms (dicts {(index,): scalar})."""
    acc = {(): ONE}
    for f in factors:
        acc = sparse_wedge(acc, f)
        if not acc:
            return {}
    return acc


def sparse_to_coords(f: dict, n: int, k: int):
    """Dense coordinates of a sparse k-form."""
    tuples, index = basis_tuples(n, k)
    out = [ZERO] * len(tuples)
    for t, c in f.items():
        out[index[t]] = out[index[t]] + c
    return out


def coords_to_sparse(coords, n: int, k: int) -> dict:
    tuples, _ = basis_tuples(n, k)
    return {t: c for t, c in zip(tuples, coords) if c}
