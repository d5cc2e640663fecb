"""Simplicial models of E(2, G) for a finite group G.

An n-simplex of E(2, G) is a tuple ``(g_0, ..., g_n)`` whose underlying set
is affinely commutative, i.e. lies in one left coset of an abelian
subgroup.  Faces delete a coordinate and degeneracies duplicate one, so a
tuple is nondegenerate exactly when no two adjacent coordinates agree.
Tuples are plain ``tuple[int, ...]`` of element indices.

Three chain-level models are produced:

* ``e2_chain_complex``: normalized chains of E(2, G), truncated;
* ``ebar_chain_complex``: the quotient by commuting tuples, with a single
  basepoint in degree 0;
* ``coset_poset_complex``: the order complex of cosets of abelian
  subgroups ordered by inclusion (finite dimensional).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .chains import ChainComplex, IntMatrix
from .errors import InvalidInput, TooLarge
from .groups import (
    FiniteGroup,
    Subgroup,
    _abelian_subgroups,
    _mask_members,
    generate_subgroup,
    maximal_abelian_subgroups,
)

DEFAULT_BUDGET = 5_000_000


# ---------------------------------------------------------------------------
# affine commutativity
# ---------------------------------------------------------------------------

def _as_sequence(S):
    seq = sorted(S) if isinstance(S, (set, frozenset)) else list(S)
    if not seq:
        raise InvalidInput("affine commutativity of the empty set is undefined")
    return seq


def is_affinely_commutative(G: FiniteGroup, S) -> bool:
    """Successive quotients ``s_{i-1}^-1 s_i`` pairwise commute.

    Sets are ordered ascending; any other iterable is taken in the given
    order (the answer does not depend on it).
    """
    seq = _as_sequence(S)
    t, inv = G.table, G.inverse
    diffs = {t[inv[a]][b] for a, b in zip(seq, seq[1:])}
    masks = G.commute_masks
    need = 0
    for d in diffs:
        need |= 1 << d
    return all(masks[d] & need == need for d in diffs)


def affine_condition_group(G: FiniteGroup, S) -> bool:
    """The subgroup generated by all ``s_i^-1 s_j`` is abelian."""
    seq = _as_sequence(S)
    t, inv = G.table, G.inverse
    H = generate_subgroup(G, {t[inv[a]][b] for a in seq for b in seq})
    return all(t[a][b] == t[b][a] for a in H.members for b in H.members)


def affine_condition_coset(G: FiniteGroup, S) -> bool:
    """``S`` lies in some left coset ``gA`` with ``A`` abelian (full scan)."""
    seq = _as_sequence(S)
    smask = 0
    for s in seq:
        smask |= 1 << s
    t = G.table
    for A in _abelian_subgroups(G):
        done = 0
        for g in range(G.order):
            if done >> g & 1:
                continue
            cmask = 0
            for a in A.members:
                cmask |= 1 << t[g][a]
            done |= cmask
            if smask & cmask == smask:
                return True
    return False


# ---------------------------------------------------------------------------
# face and degeneracy maps
# ---------------------------------------------------------------------------

def e_face(s, i):
    return s[:i] + s[i + 1:]


def e_degeneracy(s, i):
    return s[:i + 1] + s[i:]


def b_face(G: FiniteGroup, s, i):
    """Face of the bar construction: drop first/last, or multiply neighbours."""
    n = len(s)
    if i == 0:
        return s[1:]
    if i == n:
        return s[:-1]
    return s[:i - 1] + (G.table[s[i - 1]][s[i]],) + s[i + 1:]


def b_degeneracy(s, i):
    return s[:i] + (0,) + s[i:]


def is_nondegenerate(s) -> bool:
    return all(a != b for a, b in zip(s, s[1:]))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _left_cosets(G: FiniteGroup, A: Subgroup):
    t = G.table
    done = 0
    out = []
    for g in range(G.order):
        if done >> g & 1:
            continue
        coset = sorted(t[g][a] for a in A.members)
        for x in coset:
            done |= 1 << x
        out.append(coset)
    return out


def _maximal_cosets(G):
    return [c for A in maximal_abelian_subgroups(G) for c in _left_cosets(G, A)]


def _adjacent_distinct(coset, n):
    tuples = [(x,) for x in coset]
    for _ in range(n):
        tuples = [t + (y,) for t in tuples for y in coset if y != t[-1]]
    return tuples


def enumerate_e2_nondegenerate(G: FiniteGroup, n: int, budget: int = DEFAULT_BUDGET):
    """Nondegenerate n-simplices of E(2, G), sorted lexicographically.

    Tuples are generated inside each left coset of each maximal abelian
    subgroup and merged, so the cost is governed by coset sizes rather
    than by ``|G|^(n+1)``.
    """
    if n < 0:
        raise InvalidInput("degree must be non-negative")
    cosets = _maximal_cosets(G)
    estimate = sum(len(c) * (len(c) - 1) ** n for c in cosets)
    if estimate > budget:
        raise TooLarge(n, estimate, budget)
    found = set()
    for c in cosets:
        found.update(_adjacent_distinct(c, n))
    return sorted(found)


def enumerate_e2_all(G: FiniteGroup, n: int, budget: int = DEFAULT_BUDGET):
    """All n-simplices of E(2, G), degenerate ones included."""
    cosets = _maximal_cosets(G)
    estimate = sum(len(c) ** (n + 1) for c in cosets)
    if estimate > budget:
        raise TooLarge(n, estimate, budget)
    found = set()
    for c in cosets:
        found.update(product(c, repeat=n + 1))
    return sorted(found)


def enumerate_commuting_tuples(G: FiniteGroup, n: int, budget: int = DEFAULT_BUDGET):
    """n-tuples of pairwise commuting elements, sorted lexicographically."""
    if n < 0:
        raise InvalidInput("length must be non-negative")
    masks = G.commute_masks
    full = (1 << G.order) - 1
    level = [((), full)]
    for k in range(n):
        nxt = []
        for tup, allowed in level:
            for x in _mask_members(allowed):
                nxt.append((tup + (x,), allowed & masks[x]))
        if len(nxt) > budget:
            raise TooLarge(k + 1, len(nxt), budget)
        level = nxt
    return [t for t, _ in level]


def is_commuting_tuple(G: FiniteGroup, s) -> bool:
    masks = G.commute_masks
    return all(masks[a] >> b & 1 for i, a in enumerate(s) for b in s[i + 1:])


# ---------------------------------------------------------------------------
# chain complexes
# ---------------------------------------------------------------------------

def _boundary(basis_lo, basis_hi, faces_of):
    index = {s: i for i, s in enumerate(basis_lo)}
    ent = {}
    for col, s in enumerate(basis_hi):
        for i, face in faces_of(s):
            row = index.get(face)
            if row is None:
                continue
            v = ent.get((row, col), 0) + (-1 if i % 2 else 1)
            if v:
                ent[row, col] = v
            else:
                del ent[row, col]
    return IntMatrix(len(basis_lo), len(basis_hi), ent)


def _simplex_faces(s):
    return [(i, s[:i] + s[i + 1:]) for i in range(len(s))]


def _enumerate_within(G, d, used, budget):
    try:
        return enumerate_e2_nondegenerate(G, d, budget=budget - used)
    except TooLarge as exc:
        raise TooLarge(d, used + exc.estimate, budget) from None


def _check_budget(degree, size, used, budget):
    if used + size > budget:
        raise TooLarge(degree, used + size, budget)


def e2_chain_complex(G: FiniteGroup, max_dim: int, budget: int = DEFAULT_BUDGET) -> ChainComplex:
    """Normalized chains of E(2, G) in degrees ``0..max_dim``.

    Degenerate faces are dropped (they are zero in the normalized complex).
    Homology is valid in degrees ``< max_dim``.
    """
    if max_dim < 0:
        raise InvalidInput("max_dim must be non-negative")
    basis = []
    used = 0
    for d in range(max_dim + 1):
        simplices = _enumerate_within(G, d, used, budget)
        used += len(simplices)
        basis.append(simplices)
    boundary = {d: _boundary(basis[d - 1], basis[d], _simplex_faces)
                for d in range(1, max_dim + 1)}
    return ChainComplex(max_dim, basis, boundary, finite=False, name=f"E2({G.name})")


BASEPOINT = ("*",)


def ebar_chain_complex(G: FiniteGroup, max_dim: int, budget: int = DEFAULT_BUDGET) -> ChainComplex:
    """Normalized chains of E(2, G) modulo the commuting-tuple subcomplex.

    Degree 0 is the single basepoint; in degree ``d >= 1`` the basis is the
    nondegenerate simplices whose coordinates do not all commute.  Faces
    that commute collapse onto the (degenerate) basepoint and contribute 0.
    """
    if max_dim < 0:
        raise InvalidInput("max_dim must be non-negative")
    basis = [[BASEPOINT]]
    used = 1
    for d in range(1, max_dim + 1):
        simplices = [s for s in _enumerate_within(G, d, used, budget)
                     if not is_commuting_tuple(G, s)]
        used += len(simplices)
        basis.append(simplices)
    boundary = {}
    if max_dim >= 1:
        # both ends of every edge are the basepoint
        boundary[1] = IntMatrix(1, len(basis[1]))
    for d in range(2, max_dim + 1):
        boundary[d] = _boundary(basis[d - 1], basis[d], _simplex_faces)
    return ChainComplex(max_dim, basis, boundary, finite=False, name=f"Ebar({G.name})")


@dataclass(frozen=True, order=True)
class CosetVertex:
    """A left coset ``gA``: ``subgroup`` indexes ``abelian_subgroups(G)`` and
    ``rep`` is the least element index in the coset."""

    subgroup: int
    rep: int


def coset_vertices(G: FiniteGroup):
    """Cosets of all abelian subgroups, ordered by (subgroup, rep), with masks."""
    verts = []
    masks = []
    for k, A in enumerate(_abelian_subgroups(G)):
        for coset in _left_cosets(G, A):
            verts.append(CosetVertex(k, coset[0]))
            m = 0
            for x in coset:
                m |= 1 << x
            masks.append(m)
    return verts, masks


def coset_poset_complex(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> ChainComplex:
    """Order complex of the poset of cosets of abelian subgroups.

    A d-simplex is a strict chain ``v_0 < v_1 < ... < v_d`` of cosets
    (as subsets of G), recorded as the tuple of vertex indices.
    """
    verts, masks = coset_vertices(G)
    nv = len(verts)
    above = [
        [j for j in range(nv) if j != i and masks[i] & masks[j] == masks[i]]
        for i in range(nv)
    ]
    levels = [[(i,) for i in range(nv)]]
    used = nv
    while True:
        nxt = [c + (j,) for c in levels[-1] for j in above[c[-1]]]
        if not nxt:
            break
        _check_budget(len(levels), len(nxt), used, budget)
        used += len(nxt)
        levels.append(sorted(nxt))
    max_dim = len(levels) - 1
    boundary = {d: _boundary(levels[d - 1], levels[d], _simplex_faces)
                for d in range(1, max_dim + 1)}
    basis = [verts] + levels[1:]
    return ChainComplex(max_dim, basis, boundary, finite=True, name=f"Coset({G.name})")


# ---------------------------------------------------------------------------
# commutator map and the simplicial homotopy
# ---------------------------------------------------------------------------

def commutator_simplicial_map(G: FiniteGroup, s):
    """``(g_0..g_n) -> ([g_0,g_1], ..., [g_{n-1},g_n])`` into the bar
    construction of the commutator subgroup."""
    s = tuple(s)
    if not s or not is_affinely_commutative(G, s):
        raise InvalidInput(f"{s} is not a simplex of E(2, G)")
    ct = G.commutator_table
    return tuple(ct[a][b] for a, b in zip(s, s[1:]))


def _commutators(G, s):
    ct = G.commutator_table
    return tuple(ct[a][b] for a, b in zip(s, s[1:]))


def homotopy_component(G: FiniteGroup, s, i):
    """``h_i(g_0..g_n) = ([g_0,g_1], .., [g_{i-1},g_i], g_i^-1,
    g_{i+1}^-1 g_i, .., g_n^-1 g_{n-1})`` in ``B_{n+1}(G)``."""
    t, inv = G.table, G.inverse
    head = _commutators(G, s[:i + 1])
    tail = tuple(t[inv[b]][a] for a, b in zip(s[i:], s[i + 1:]))
    return head + (inv[s[i]],) + tail


def commutator_then_include(G: FiniteGroup, s):
    """The composite E(2,G) -> B[G,G] -> BG."""
    return _commutators(G, s)


def project_then_invert(G: FiniteGroup, s):
    """The composite E(2,G) -> B(2,G) -> B(2,G) -> BG of projection and
    inversion: ``(g_0..g_n) -> (g_1^-1 g_0, ..., g_n^-1 g_{n-1})``."""
    t, inv = G.table, G.inverse
    return tuple(t[inv[b]][a] for a, b in zip(s, s[1:]))


def simplicial_homotopy_failures(G: FiniteGroup, n: int, sample=None, seed=0,
                                 budget: int = DEFAULT_BUDGET):
    """Check the simplicial homotopy identities for ``h_0..h_n`` on n-simplices.

    With ``f = project_then_invert`` and ``g = commutator_then_include``:
    ``d_0 h_0 = f``, ``d_{n+1} h_n = g``, ``d_i h_j = h_{j-1} d_i`` (i < j),
    ``d_{j+1} h_{j+1} = d_{j+1} h_j``, ``d_i h_j = h_j d_{i-1}`` (i > j+1),
    ``s_i h_j = h_{j+1} s_i`` (i <= j), ``s_i h_j = h_j s_{i-1}`` (i > j).

    Returns a list of ``(simplex, identity)`` pairs that failed.
    """
    simplices = enumerate_e2_all(G, n, budget=budget)
    if sample is not None and sample < len(simplices):
        simplices = random.Random(seed).sample(simplices, sample)
    h = lambda x, j: homotopy_component(G, x, j)  # noqa: E731
    bf = lambda y, i: b_face(G, y, i)  # noqa: E731
    fails = []
    for x in simplices:
        hs = [h(x, j) for j in range(n + 1)]
        if bf(hs[0], 0) != project_then_invert(G, x):
            fails.append((x, "d0 h0"))
        if bf(hs[n], n + 1) != commutator_then_include(G, x):
            fails.append((x, "d_{n+1} h_n"))
        for j in range(n + 1):
            for i in range(n + 2):
                if i < j:
                    ok = bf(hs[j], i) == h(e_face(x, i), j - 1)
                elif i == j + 1 and j < n:
                    ok = bf(hs[j + 1], j + 1) == bf(hs[j], j + 1)
                elif i > j + 1:
                    ok = bf(hs[j], i) == h(e_face(x, i - 1), j)
                else:
                    continue
                if not ok:
                    fails.append((x, f"d{i} h{j}"))
            for i in range(n + 2):
                if i <= j:
                    ok = b_degeneracy(hs[j], i) == h(e_degeneracy(x, i), j + 1)
                else:
                    ok = b_degeneracy(hs[j], i) == h(e_degeneracy(x, i - 1), j)
                if not ok:
                    fails.append((x, f"s{i} h{j}"))
    return fails


def check_simplicial_homotopy(G: FiniteGroup, n: int, sample=None, seed=0,
                              budget: int = DEFAULT_BUDGET) -> bool:
    """True iff the homotopy identities hold on every (sampled) n-simplex."""
    return not simplicial_homotopy_failures(G, n, sample=sample, seed=seed, budget=budget)


def commutator_map_is_simplicial(G: FiniteGroup, n: int, budget: int = DEFAULT_BUDGET):
    """Return n-simplices on which the commutator map fails to commute with
    some face or degeneracy (empty list when it is simplicial)."""
    bad = []
    for x in enumerate_e2_all(G, n, budget=budget):
        cx = _commutators(G, x)
        if n >= 1:
            for i in range(n + 1):
                if _commutators(G, e_face(x, i)) != b_face(G, cx, i):
                    bad.append((x, f"d{i}"))
        for i in range(n + 1):
            if _commutators(G, e_degeneracy(x, i)) != b_degeneracy(cx, i):
                bad.append((x, f"s{i}"))
    return bad


def affine_triple_failures(G: FiniteGroup):
    """Affinely commutative ordered triples violating ``[g,h][h,k] = [g,k]``."""
    ct, t = G.commutator_table, G.table
    bad = []
    for s in enumerate_e2_all(G, 2):
        g, h, k = s
        if t[ct[g][h]][ct[h][k]] != ct[g][k]:
            bad.append(s)
    return bad
