"""Finite groups as multiplication tables.

Every group is stored as a complete Cayley table over the indices
``0..order-1`` with index 0 the identity.  Permutations act on the right:
the product ``g*h`` means "apply g, then h", so for points ``x`` we have
``x^(gh) = (x^g)^h``.  Commutators use ``[g, h] = g^-1 h^-1 g h``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

from .errors import GroupTooLarge, InvalidInput

DEFAULT_ORDER_CAP = 1024

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1 2)(3 4 5)`` into a 0-based image tuple.

    Points may be separated by spaces or commas.  ``()`` or an empty string
    is the identity.
    """
    if degree < 1:
        raise InvalidInput(f"degree must be positive, got {degree}")
    text = text.strip()
    img = list(range(degree))
    if not text:
        return tuple(img)
    if _CYCLE_RE.sub("", text).strip():
        raise InvalidInput(f"invalid cycle notation: {text!r}")
    seen = set()
    for body in _CYCLE_RE.findall(text):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            pts = [int(t) for t in tokens]
        except ValueError:
            raise InvalidInput(f"invalid cycle notation: {text!r}") from None
        for p in pts:
            if not 1 <= p <= degree:
                raise InvalidInput(f"point {p} outside 1..{degree} in {text!r}")
            if p in seen:
                raise InvalidInput(f"point {p} repeated in {text!r}")
            seen.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def cycle_string(img: Sequence[int]) -> str:
    """Cycle notation label, e.g. ``(1,2)(3,4)``; the identity is ``()``."""
    seen = [False] * len(img)
    parts = []
    for start in range(len(img)):
        if seen[start] or img[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x + 1))
            x = img[x]
        parts.append("(" + ",".join(cyc) + ")")
    return "".join(parts) or "()"


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Right-action product: apply ``p`` first, then ``q``."""
    return tuple(q[x] for x in p)


# ---------------------------------------------------------------------------
# the group type
# ---------------------------------------------------------------------------

class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of ``a*b``; ``inverse[a]`` the index of
    ``a^-1``; ``labels[a]`` a whitespace-free human readable name.
    ``generators`` records the indices the group was built from, if known.
    """

    def __init__(self, table, labels=None, name="G", generators=()):
        self.table = [list(row) for row in table]
        self.order = len(self.table)
        n = self.order
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidInput("table must be a non-empty square array")
        if self.table[0] != list(range(n)) or [r[0] for r in self.table] != list(range(n)):
            raise InvalidInput("index 0 must be the identity")
        inverse = [None] * n
        for a, row in enumerate(self.table):
            try:
                inverse[a] = row.index(0)
            except ValueError:
                raise InvalidInput(f"element {a} has no inverse") from None
        self.inverse = inverse
        self.labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
        if len(self.labels) != n:
            raise InvalidInput("need exactly one label per element")
        self.name = name
        self.generators = tuple(generators)

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def product(self, elems: Iterable[int]) -> int:
        acc = 0
        t = self.table
        for e in elems:
            acc = t[acc][e]
        return acc

    def index_of(self, label: str) -> int:
        return self._label_index[label]

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def commute_masks(self) -> list[int]:
        """Bitmask of the centralizer of each element."""
        t = self.table
        masks = []
        for a in range(self.order):
            row = t[a]
            m = 0
            for b in range(self.order):
                if row[b] == t[b][a]:
                    m |= 1 << b
            masks.append(m)
        return masks

    @cached_property
    def commutator_table(self) -> list[list[int]]:
        t, inv = self.table, self.inverse
        return [
            [t[t[inv[g]][inv[h]]][t[g][h]] for h in range(self.order)]
            for g in range(self.order)
        ]

    def commutes(self, a: int, b: int) -> bool:
        return bool(self.commute_masks[a] >> b & 1)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k


def check_group_axioms(G: FiniteGroup) -> None:
    """Brute-force validation of the table invariants; raises InvalidInput."""
    n = G.order
    full = set(range(n))
    t = G.table
    for a in range(n):
        if set(t[a]) != full or {t[b][a] for b in range(n)} != full:
            raise InvalidInput("table is not a Latin square")
        if t[a][G.inverse[a]] != 0:
            raise InvalidInput("bad inverse")
    for a in range(n):
        ta = t[a]
        for b in range(n):
            ab = ta[b]
            tb = t[b]
            tab = t[ab]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise InvalidInput(f"not associative at {(a, b, c)}")


def closure(
    generators: Sequence[Hashable],
    mul: Callable,
    identity: Hashable,
    key: Callable = lambda x: x,
    cap: int = DEFAULT_ORDER_CAP,
) -> list:
    """Breadth-first closure of ``generators`` under ``mul``.

    Returns elements with the identity first, then layer by layer (word
    length in the generators), each new layer sorted by ``key``.
    """
    elems = [identity]
    seen = {identity}
    layer = [identity]
    while layer:
        fresh = []
        for x in layer:
            for g in generators:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        if len(seen) > cap:
            raise GroupTooLarge(cap)
        fresh.sort(key=key)
        elems.extend(fresh)
        layer = fresh
    return elems


def group_from_elements(elements, mul, labels, name="G", generators=()) -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(x, y)] for y in elements] for x in elements]
    gens = tuple(index[g] for g in generators)
    return FiniteGroup(table, labels=labels, name=name, generators=gens)


def group_from_generators(
    generators: Sequence[str], degree: int, cap: int = DEFAULT_ORDER_CAP, name=None
) -> FiniteGroup:
    """Permutation group generated by cycle-notation strings on ``1..degree``.

    Elements are ordered breadth-first from the identity over the
    generators in the given order, each layer sorted by one-line image.
    """
    perms = [parse_cycles(g, degree) for g in generators]
    identity = tuple(range(degree))
    elems = closure(perms, compose, identity, cap=cap)
    labels = [cycle_string(p) for p in elems]
    G = group_from_elements(
        elems, compose, labels, name=name or "<" + ",".join(generators) + ">",
        generators=[p for p in perms],
    )
    G.degree = degree
    G.permutations = elems
    return G


def read_group_file(path) -> FiniteGroup:
    """Read a ``degree N`` header followed by one generator per line."""
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InvalidInput(f"{path}: empty group file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "degree" or not head[1].isdigit():
        raise InvalidInput(f"{path}: first line must be 'degree N'")
    return group_from_generators(lines[1:], int(head[1]), name=str(path))


# ---------------------------------------------------------------------------
# subgroups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> int:
        m = 0
        for x in self.members:
            m |= 1 << x
        return m

    def __contains__(self, x) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"Subgroup(order={self.order}, members={list(self.members)})"

    def left_coset(self, g: int) -> frozenset:
        t = self.parent.table[g]
        return frozenset(t[a] for a in self.members)


def _mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def generate_subgroup(G: FiniteGroup, elements: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``elements``."""
    t = G.table
    gens = sorted(set(elements) - {0})
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, tuple(sorted(members)))


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    s = set(members)
    if 0 not in s:
        return False
    t = G.table
    return all(t[a][G.inverse[b]] in s for a in s for b in s)


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    """``[g, h] = g^-1 h^-1 g h``."""
    if not (0 <= g < G.order and 0 <= h < G.order):
        raise IndexError(f"element index out of range for group of order {G.order}")
    return G.commutator_table[g][h]


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {c for row in G.commutator_table for c in row}
    return generate_subgroup(G, comms)


def center(G: FiniteGroup) -> Subgroup:
    full = (1 << G.order) - 1
    return Subgroup(G, tuple(z for z, m in enumerate(G.commute_masks) if m == full))


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    return Subgroup(G, _mask_members(G.commute_masks[g]))


def is_abelian(G: FiniteGroup) -> bool:
    t = G.table
    n = G.order
    return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))


def is_transitively_commutative(G: FiniteGroup) -> bool:
    """Commuting is transitive on non-central elements.

    The scan is over triples, with the inner loop over ``c`` done on
    bitmasks: for each non-central ``b`` every non-central ``a`` commuting
    with ``b`` must commute with every non-central ``c`` that does.
    """
    masks = G.commute_masks
    full = (1 << G.order) - 1
    noncentral = 0
    for x, m in enumerate(masks):
        if m != full:
            noncentral |= 1 << x
    for b in _mask_members(noncentral):
        nbrs = masks[b] & noncentral
        for a in _mask_members(nbrs):
            if masks[a] & nbrs != nbrs:
                return False
    return True


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    t, inv = G.table, G.inverse
    seen = set()
    classes = []
    for x in range(G.order):
        if x in seen:
            continue
        cls = sorted({t[t[inv[g]][x]][g] for g in range(G.order)})
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def abelian_subgroups(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> list[Subgroup]:
    """All abelian subgroups of ``G``, sorted by (size, members).

    Bottom-up search: every abelian subgroup is reached from the trivial
    one by repeatedly adjoining an element of its centralizer, and
    ``<A, x>`` for such ``x`` is just the set of products ``a * x^k``.
    """
    if G.order > cap:
        raise GroupTooLarge(cap)
    return list(_abelian_subgroups(G))


def _abelian_subgroups(G):
    cached = G.__dict__.get("_abelian_cache")
    if cached is not None:
        return cached
    t = G.table
    masks = G.commute_masks
    full = (1 << G.order) - 1
    found = {1: (0,)}
    frontier = [1]
    while frontier:
        nxt = []
        for amask in frontier:
            members = found[amask]
            cent = full
            for a in members:
                cent &= masks[a]
            for x in _mask_members(cent & ~amask):
                powers = [0]
                y = x
                while y != 0:
                    powers.append(y)
                    y = t[y][x]
                new = {t[a][p] for a in members for p in powers}
                m = 0
                for e in new:
                    m |= 1 << e
                if m not in found:
                    found[m] = tuple(sorted(new))
                    nxt.append(m)
        frontier = nxt
    subs = sorted((Subgroup(G, mem) for mem in found.values()),
                  key=lambda s: (s.order, s.members))
    G._abelian_cache = tuple(subs)
    return G._abelian_cache


def maximal_abelian_subgroups(G: FiniteGroup) -> list[Subgroup]:
    subs = _abelian_subgroups(G)
    out = []
    for i, a in enumerate(subs):
        if not any(b.order > a.order and a.mask & b.mask == a.mask for b in subs[i + 1:]):
            out.append(a)
    return out
