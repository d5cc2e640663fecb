"""Smith normal form and integral homology.

Boundary matrices are sparse with mostly unit entries.  ``smith_normal_form``
first splits off unit pivots by sparse elimination (a unit pivot can be
cleared from its row and column without touching the rest of the matrix),
preferring sparse columns and short pivot rows to limit fill-in, and then
runs a dense exact Smith reduction on whatever is left.  Only the diagonal is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .chains import ChainComplex, IntMatrix
from .errors import InvalidDegree, NotFiniteDimensional


@dataclass(frozen=True)
class SNFResult:
    diagonal: tuple  # nonzero invariant factors d_1 | d_2 | ...

    @property
    def rank(self) -> int:
        return len(self.diagonal)


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = field(default=())

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def as_dict(self):
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ["Z"] * min(self.betti, 1)
        if self.betti > 1:
            parts = [f"Z^{self.betti}"]
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _as_rows(M):
    if isinstance(M, IntMatrix):
        return M.row_dicts()
    return {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(M) if any(r)}


def _sparse_unit_elimination(rows):
    """Split off unit pivots in place.  Returns the number removed; ``rows``
    is left holding the residual matrix (row -> {col: value}).

    Works in passes over the columns, sparsest first; in each column the
    shortest row carrying a unit entry is the pivot.
    """
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    removed = 0
    while True:
        found = False
        for c in sorted(cols, key=lambda c: (len(cols[c]), c)):
            rs = cols.get(c)
            if not rs:
                continue
            best = None
            for r in rs:
                v = rows[r][c]
                if (v == 1 or v == -1) and (best is None or len(rows[r]) < best[0]):
                    best = (len(rows[r]), r)
            if best is not None:
                _pivot(rows, cols, best[1], c)
                removed += 1
                found = True
        if not found:
            return removed


def _pivot(rows, cols, pr, pc):
    prow = rows[pr]
    u = prow[pc]
    for r in list(cols[pc]):
        if r == pr:
            continue
        row = rows[r]
        f = row[pc] * u  # u is a unit, so u^-1 == u
        for c, v in prow.items():
            nv = row.get(c, 0) - f * v
            if nv:
                if c not in row:
                    cols[c].add(r)
                row[c] = nv
            else:
                if c in row:
                    del row[c]
                    cols[c].discard(r)
        if not row:
            del rows[r]
    for c in prow:
        s = cols[c]
        s.discard(pr)
        if not s:
            del cols[c]
    del rows[pr]


def _dense_snf_diagonal(A):
    """Diagonal of the Smith form of a dense integer matrix (list of lists)."""
    A = [list(r) for r in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero magnitude pivot in the trailing block
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
        if piv is None:
            break
        _, i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for i in range(t, m):
                            A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # row and column cleared; enforce divisibility of the rest
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                At, Ab = A[t], A[bad]
                for j in range(t, n):
                    At[j] += Ab[j]
                continue
            # move the smallest remaining entry of row/column t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def smith_normal_form(M) -> SNFResult:
    """Nonzero invariant factors of an integer matrix.

    ``M`` may be an ``IntMatrix`` or a dense list of rows.
    """
    rows = _as_rows(M)
    units = _sparse_unit_elimination(rows)
    if rows:
        cidx = sorted({c for row in rows.values() for c in row})
        pos = {c: k for k, c in enumerate(cidx)}
        dense = []
        for row in rows.values():
            r = [0] * len(cidx)
            for c, v in row.items():
                r[pos[c]] = v
            dense.append(r)
        rest = _dense_snf_diagonal(dense)
    else:
        rest = []
    ones = units + rest.count(1)
    return SNFResult((1,) * ones + tuple(_normalize_chain([x for x in rest if x > 1])))


def _normalize_chain(diag):
    d = list(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a * b // g
    return sorted(d)


def rank_mod_p(M, p: int) -> int:
    """Rank over GF(p) by plain Gaussian elimination (independent of SNF)."""
    rows = [dict((c, v % p) for c, v in row.items() if v % p) for row in _as_rows(M).values()]
    pivots = {}
    rank = 0
    for row in rows:
        while row:
            c = min(row)
            if c in pivots:
                prow = pivots[c]
                f = row[c]
                for k, v in prow.items():
                    nv = (row.get(k, 0) - f * v) % p
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            else:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
    return rank


def homology(C: ChainComplex, d: int) -> HomologyGroup:
    """``H_d = ker(boundary_d) / im(boundary_{d+1})``."""
    if d not in C.valid_degrees:
        raise InvalidDegree(
            f"H_{d} is not determined by {C.name or 'this complex'} "
            f"(valid degrees {list(C.valid_degrees)})"
        )
    rank_d = smith_normal_form(C.boundary_matrix(d)).rank if d >= 1 else 0
    up = smith_normal_form(C.boundary_matrix(d + 1)) if d + 1 <= C.max_dim else SNFResult(())
    betti = C.rank(d) - rank_d - up.rank
    return HomologyGroup(betti, tuple(x for x in up.diagonal if x > 1))


def all_homology(C: ChainComplex, degrees=None):
    """Homology in each valid degree, sharing one SNF per boundary map."""
    degrees = list(C.valid_degrees if degrees is None else degrees)
    for d in degrees:
        if d not in C.valid_degrees:
            raise InvalidDegree(f"H_{d} is not determined by this complex")
    snf = {}
    for d in range(1, C.max_dim + 1):
        if d in degrees or d - 1 in degrees:
            snf[d] = smith_normal_form(C.boundary[d])
    out = {}
    for d in degrees:
        rank_d = snf[d].rank if d >= 1 else 0
        up = snf.get(d + 1, SNFResult(()))
        out[d] = HomologyGroup(C.rank(d) - rank_d - up.rank,
                               tuple(x for x in up.diagonal if x > 1))
    return out


def reduced(H: HomologyGroup, d: int) -> HomologyGroup:
    if d == 0:
        return HomologyGroup(max(H.betti - 1, 0), H.torsion)
    return H


def euler_characteristic(C: ChainComplex) -> int:
    if not C.finite:
        raise NotFiniteDimensional(f"{C.name or 'complex'} is truncated at degree {C.max_dim}")
    return sum((-1) ** d * C.rank(d) for d in range(C.max_dim + 1))


def cross_check_mod_p(C: ChainComplex, d: int, primes=(2, 3, 5, 7)) -> bool:
    """Check the SNF of ``boundary_d`` against ranks over GF(p).

    Over GF(p) the rank is the number of invariant factors not divisible
    by p, so disagreement would expose a wrong Betti number or a missed
    p-torsion factor.
    """
    M = C.boundary_matrix(d)
    snf = smith_normal_form(M)
    return all(
        rank_mod_p(M, p) == sum(1 for x in snf.diagonal if x % p) for p in primes
    )
