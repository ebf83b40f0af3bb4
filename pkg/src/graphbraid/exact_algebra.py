"""Exact integer and GF(2) linear algebra, free-group words and Lambda^2 classes.

Python integers are arbitrary precision, so nothing here can overflow.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import NoSolution, NotAChainComplex, NotInCommutatorSubgroup

Matrix = list  # list of rows of ints


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(k: int) -> Matrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = zeros(len(A), cols)
    for i, row in enumerate(A):
        o = out[i]
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        o[j] += a * bk[j]
    return out


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (S, U, V) with U A V = S diagonal, each diagonal entry dividing the next."""
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        if q:
            rs, rd = S[src], S[dst]
            for j in range(n):
                if rs[j]:
                    rd[j] -= q * rs[j]
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(src, dst, q):  # col dst -= q * col src
        if q:
            for row in S:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of minimal absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = S[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = S[t][t]
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // p
                    add_row(t, i, q)
                    if S[i][t]:
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // p
                    add_col(t, j, q)
                    if S[t][j]:
                        done = False
            if done:
                # enforce divisibility of the trailing block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if S[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                add_row(bad, t, -1)
                continue
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t, m):
                if S[i][t] and (best is None or abs(S[i][t]) < best[0]):
                    best = (abs(S[i][t]), i, t)
            for j in range(t, n):
                if S[t][j] and (best is None or abs(S[t][j]) < best[0]):
                    best = (abs(S[t][j]), t, j)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def _sparse_rows(A: Matrix) -> list[dict]:
    return [{j: x for j, x in enumerate(row) if x} for row in A]


def invariant_factors(A, ncols: int | None = None) -> list[int]:
    """Nonzero invariant factors (ascending, successive divisibility).

    Accepts a dense matrix or a list of sparse row dicts.  Unit pivots are
    eliminated sparsely first; the remaining block goes through the dense
    Smith form.
    """
    rows = [dict(r) for r in A] if A and isinstance(A[0], dict) else _sparse_rows(A)
    rows = [r for r in rows if r]
    ones = 0
    # column -> set of row indices
    colmap: dict = {}
    for i, r in enumerate(rows):
        for j in r:
            colmap.setdefault(j, set()).add(i)
    alive = set(range(len(rows)))
    changed = True
    while changed:
        changed = False
        order = sorted(alive, key=lambda i: len(rows[i]))
        for i in order:
            if i not in alive:
                continue
            r = rows[i]
            piv = None
            for j, x in r.items():
                if x in (1, -1) and (piv is None or len(colmap[j]) < len(colmap[piv])):
                    piv = j
            if piv is None:
                continue
            x = r[piv]
            for k in list(colmap[piv]):
                if k == i:
                    continue
                rk = rows[k]
                q = rk[piv] * x  # x is a unit, so x == 1/x
                for j, y in r.items():
                    v = rk.get(j, 0) - q * y
                    if v:
                        if j not in rk:
                            colmap.setdefault(j, set()).add(k)
                        rk[j] = v
                    else:
                        if j in rk:
                            del rk[j]
                            colmap[j].discard(k)
                if not rk:
                    alive.discard(k)
            # row i and column piv are now a unit pivot block
            for j in r:
                colmap[j].discard(i)
            alive.discard(i)
            ones += 1
            changed = True
    rest = [rows[i] for i in sorted(alive) if rows[i]]
    if not rest:
        return [1] * ones
    cols = sorted({j for r in rest for j in r})
    cidx = {j: k for k, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for i, r in enumerate(rest):
        for j, x in r.items():
            dense[i][cidx[j]] = x
    S, _, _ = smith_normal_form(dense)
    diag = [abs(S[i][i]) for i in range(min(len(S), len(cols))) if S[i][i]]
    return [1] * ones + sorted(diag)


def rank(A) -> int:
    return len(invariant_factors(A))


class Lattice:
    """Z-span of sparse integer vectors, kept as an echelon basis for membership tests."""

    def __init__(self, rows: Iterable[dict] = ()):
        self.basis: dict = {}  # pivot key -> row with positive pivot entry
        for r in rows:
            self.add(r)

    def add(self, v: dict):
        v = {k: x for k, x in v.items() if x}
        while v:
            key = min(v)
            b = self.basis.get(key)
            if b is None:
                if v[key] < 0:
                    v = {k: -x for k, x in v.items()}
                self.basis[key] = v
                return
            # extended gcd on the pivot entries
            g, s, t = _xgcd(b[key], v[key])
            new_b = _combine(b, s, v, t)
            p, q = b[key] // g, v[key] // g
            rest = _combine(v, p, b, -q)
            if new_b[key] < 0:
                new_b = {k: -x for k, x in new_b.items()}
            self.basis[key] = new_b
            v = rest

    def contains(self, v: dict) -> bool:
        r = {k: x for k, x in v.items() if x}
        while r:
            key = min(r)
            b = self.basis.get(key)
            if b is None or r[key] % b[key]:
                return False
            r = _combine(r, 1, b, -(r[key] // b[key]))
        return True

    @property
    def rank(self) -> int:
        return len(self.basis)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) > 0."""
    sa, sb = (1 if a >= 0 else -1), (1 if b >= 0 else -1)
    a, b = abs(a), abs(b)
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, sa * x0, sb * y0


def _combine(u: dict, a: int, v: dict, b: int) -> dict:
    out = {k: a * x for k, x in u.items()}
    for k, x in v.items():
        y = out.get(k, 0) + b * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return {k: x for k, x in out.items() if x}


@dataclass
class HomologySummary:
    dimension: int
    betti: int
    torsion: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "betti": self.betti, "torsion": [str(x) if abs(x) >= 2**53 else x for x in self.torsion]}


def homology(d_k, d_k1, dim_k: int, dimension: int = 0) -> HomologySummary:
    """Homology at C_k from d_k: C_k -> C_{k-1} and d_k1: C_{k+1} -> C_k.

    Matrices are dense lists of rows (rows index the target); empty lists
    stand for zero maps.
    """
    if d_k and d_k1 and matmul(d_k, d_k1) != zeros(len(d_k), len(d_k1[0]) if d_k1 else 0):
        raise NotAChainComplex("consecutive boundaries do not compose to zero")
    r_in = rank(d_k) if d_k else 0
    f_out = invariant_factors(d_k1) if d_k1 else []
    betti = dim_k - r_in - len(f_out)
    return HomologySummary(dimension, betti, [x for x in f_out if x > 1])


def homology_sparse(d_k_rows: list, d_k1_rows: list, dim_k: int, dimension: int = 0) -> HomologySummary:
    r_in = len(invariant_factors(d_k_rows)) if d_k_rows else 0
    f_out = invariant_factors(d_k1_rows) if d_k1_rows else []
    return HomologySummary(dimension, dim_k - r_in - len(f_out), [x for x in f_out if x > 1])


# ---------------------------------------------------------------------------
# GF(2)


def _pack(rows) -> list[int]:
    out = []
    for r in rows:
        if isinstance(r, int):
            out.append(r)
        else:
            x = 0
            for j, a in enumerate(r):
                if a % 2:
                    x |= 1 << j
            out.append(x)
    return out


def _echelon(packed: list[int]) -> list[tuple[int, int]]:
    """Reduced basis as (pivot bit, row) keeping one row per leading bit."""
    basis: dict = {}
    for x in packed:
        while x:
            h = x.bit_length() - 1
            if h in basis:
                x ^= basis[h]
            else:
                basis[h] = x
                break
    return sorted(basis.items())


def gf2_rank(rows) -> int:
    return len(_echelon(_pack(rows)))


def gf2_solve(columns, target) -> list[int]:
    """Find x with sum x_i * columns[i] = target over GF(2).

    ``columns`` and ``target`` are bit masks (or 0/1 sequences).
    Returns the indices i with x_i = 1.
    """
    cols = _pack(columns)
    (tgt,) = _pack([target])
    # track combinations alongside each basis vector
    basis: dict = {}
    for i, x in enumerate(cols):
        comb = 1 << i
        while x:
            h = x.bit_length() - 1
            if h in basis:
                bx, bc = basis[h]
                x ^= bx
                comb ^= bc
            else:
                basis[h] = (x, comb)
                break
    comb = 0
    x = tgt
    while x:
        h = x.bit_length() - 1
        if h not in basis:
            raise NoSolution("target is not in the span")
        bx, bc = basis[h]
        x ^= bx
        comb ^= bc
    return [i for i in range(len(cols)) if comb >> i & 1]


def gf2_nullspace(rows, ncols: int) -> list[int]:
    """Basis (bit masks over columns) of {x : rows . x = 0}."""
    packed = _pack(rows)
    # Gauss-Jordan over columns
    pivots: dict = {}
    ech = []
    for x in packed:
        for col, r in pivots.items():
            if x >> col & 1:
                x ^= r
        if not x:
            continue
        col = (x & -x).bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= x
        pivots[col] = x
        ech.append(x)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = 1 << f
        for col, r in pivots.items():
            if r >> f & 1:
                v |= 1 << col
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# free groups


Word = tuple  # of (generator, +-1)


def free_reduce(w) -> Word:
    out: list = []
    for g, e in w:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(w) -> Word:
    w = list(free_reduce(w))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def inverse(w) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def commutator(u, v) -> Word:
    return free_reduce(tuple(u) + tuple(v) + inverse(u) + inverse(v))


def power(w, k: int) -> Word:
    if k < 0:
        return inverse(w) * (-k)
    return tuple(w) * k


def cyclic_equal(u, v, allow_inverse: bool = True) -> bool:
    """Equality up to cyclic rotation (and optionally inversion) of reduced words."""
    u = cyclic_reduce(u)
    for cand in (cyclic_reduce(v), cyclic_reduce(inverse(v))) if allow_inverse else (cyclic_reduce(v),):
        if len(cand) != len(u):
            continue
        if not u:
            return True
        doubled = cand + cand
        for i in range(len(cand)):
            if doubled[i : i + len(u)] == u:
                return True
    return False


def abelianize(w, g: int) -> list[int]:
    out = [0] * g
    for x, e in w:
        out[x] += e
    return out


def lambda2_class(w, g: int) -> Matrix:
    """Image of w in Lambda^2 Z^g as an antisymmetric matrix.

    Entry (i, j) with i < j is the signed count of ordered letter pairs
    (x_i^a before x_j^b, weight a*b), which equals the degree-two Magnus
    coefficient of X_i X_j.
    """
    if any(abelianize(w, g)):
        raise NotInCommutatorSubgroup("word does not abelianize to zero")
    M = zeros(g, g)
    seen = [0] * g  # running exponent sums of letters seen so far
    for x, e in w:
        for i in range(g):
            if seen[i] and i != x:
                M[i][x] += seen[i] * e
        seen[x] += e
    out = zeros(g, g)
    for i in range(g):
        for j in range(i + 1, g):
            out[i][j] = M[i][j]
            out[j][i] = -M[i][j]
    return out


def lambda2_vector(w, g: int) -> dict:
    """Sparse form of :func:`lambda2_class`: {(i, j): coefficient, i < j}."""
    if any(abelianize(w, g)):
        raise NotInCommutatorSubgroup("word does not abelianize to zero")
    out: dict = {}
    seen: dict = {}
    for x, e in w:
        for i, s in seen.items():
            if s and i < x:
                out[(i, x)] = out.get((i, x), 0) + s * e
        seen[x] = seen.get(x, 0) + e
    return {k: v for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# permutation homomorphism


def pi_star(t, c, n: int) -> int:
    """Parity of the permutation induced by the loop of a critical 1-cell."""
    from .config_complex import encode_a_notation

    a = encode_a_notation(t, c)
    if a.branch_terms:
        bt = a.branch_terms[0]
        return sum(bt.a[: bt.k - 1]) % 2
    d = a.deleted[0]
    if 0 in t.ends(d):
        return (n - 1) % 2
    return 0
