"""Finite group presentations.

A word is a tuple of nonzero integers: ``k`` stands for generator ``k-1``
and ``-k`` for its inverse.

Text form::

    generators <n>
    <symbol> <symbol> ...
    relators <m>
    <symbol> <symbol>^-1 ...      # one relator per line
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import IntMatrix
from .errors import InvalidInput
from .homology import HomologyGroup, smith_normal_form


@dataclass
class Presentation:
    generators: list
    relators: list = field(default_factory=list)

    def __post_init__(self):
        n = len(self.generators)
        rels = []
        for r in self.relators:
            r = tuple(r)
            if not r:
                continue
            if any(x == 0 or abs(x) > n for x in r):
                raise InvalidInput(f"relator {r} refers to a missing generator")
            rels.append(r)
        self.relators = rels

    @property
    def is_empty(self) -> bool:
        return not self.generators and not self.relators

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def canonical_rotation(word):
    """Least rotation of a word (used to identify conjugate relators)."""
    if not word:
        return word
    return min(word[i:] + word[:i] for i in range(len(word)))


def canonical_relator(word):
    """Least cyclic rotation of the word or of its inverse."""
    inv = tuple(-x for x in reversed(word))
    return min(canonical_rotation(word), canonical_rotation(inv))


def invert(word):
    return tuple(-x for x in reversed(word))


def tietze_simplify(P: Presentation, max_rounds: int = 1000) -> Presentation:
    """Simplify by Tietze moves until nothing changes (or ``max_rounds``).

    Each round: relators are freely and cyclically reduced and deduplicated
    up to rotation and inversion; a generator forming a length-1 relator is
    deleted; a length-2 relator ``a^e b^f`` with ``a != b`` eliminates the
    later generator by substituting it with a power of the earlier one.
    Surviving generators keep their relative order.
    """
    n = len(P.generators)
    # subst[g] is None (alive), () (trivial) or (letter,) (alias)
    subst = [None] * n

    def resolve(letter):
        g = abs(letter) - 1
        s = subst[g]
        if s is None:
            return (letter,)
        if not s:
            return ()
        out = resolve(s[0])
        subst[g] = out  # path compression
        return out if letter > 0 else invert(out)

    def rewrite(word):
        out = []
        for x in word:
            out.extend(resolve(x))
        return cyclic_reduce(out)

    rels = list(P.relators)
    for _ in range(max_rounds):
        seen = set()
        cleaned = []
        for r in rels:
            r = rewrite(r)
            if not r:
                continue
            key = canonical_relator(r)
            if key not in seen:
                seen.add(key)
                cleaned.append(r)
        rels = cleaned
        changed = False
        for r in rels:
            if len(r) > 2:
                continue
            w = rewrite(r)
            if len(w) == 1:
                subst[abs(w[0]) - 1] = ()
                changed = True
            elif len(w) == 2 and abs(w[0]) != abs(w[1]):
                a, b = sorted(w, key=abs)
                # a b = 1 (up to rotation), so b = a^-1
                subst[abs(b) - 1] = (-a if b > 0 else a,)
                changed = True
        if not changed:
            break
    alive = [g for g in range(n) if subst[g] is None]
    renum = {g + 1: k + 1 for k, g in enumerate(alive)}
    out = []
    for r in rels:
        w = rewrite(r)
        if w:
            out.append(tuple(renum[abs(x)] * (1 if x > 0 else -1) for x in w))
    return Presentation([P.generators[g] for g in alive], out)


def relation_matrix(P: Presentation):
    rows = []
    for r in P.relators:
        row = {}
        for x in r:
            g = abs(x) - 1
            row[g] = row.get(g, 0) + (1 if x > 0 else -1)
        rows.append(row)
    return rows


def abelianization(P: Presentation) -> HomologyGroup:
    """Abelian invariants from the Smith form of the exponent-sum matrix."""
    entries = {}
    for i, row in enumerate(relation_matrix(P)):
        for g, v in row.items():
            if v:
                entries[i, g] = v
    M = IntMatrix(len(P.relators), len(P.generators), entries)
    snf = smith_normal_form(M)
    return HomologyGroup(len(P.generators) - snf.rank, tuple(x for x in snf.diagonal if x > 1))


class CosetOverflow(Exception):
    pass


def coset_enumeration(P: Presentation, max_cosets: int = 1_000_000) -> int:
    """Index of the trivial subgroup, by HLT-style Todd-Coxeter enumeration.

    Returns the number of cosets (the group order).  Raises CosetOverflow
    when more than ``max_cosets`` cosets would be defined.
    """
    ngen = len(P.generators)
    if ngen == 0:
        return 1
    ncol = 2 * ngen

    def col(letter):
        return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1

    relators = [[col(x) for x in cyclic_reduce(r)] for r in P.relators]
    relators = [r for r in relators if r]
    table = [[None] * ncol]
    parent = [0]

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c, x):
        if len(table) >= max_cosets:
            raise CosetOverflow(max_cosets)
        d = len(table)
        table.append([None] * ncol)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(k, l, queue):
        k, l = rep(k), rep(l)
        if k != l:
            k, l = min(k, l), max(k, l)
            parent[l] = k
            queue.append(l)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncol):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c, word):
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                return
            define(f, word[i])

    c = 0
    while c < len(table):
        for r in relators:
            if parent[c] != c:
                break
            scan_and_fill(c, r)
        for x in range(ncol):
            if parent[c] != c:
                break
            if table[c][x] is None:
                define(c, x)
        c += 1
    return sum(1 for k in range(len(parent)) if parent[k] == k)


# ---------------------------------------------------------------------------
# text form
# ---------------------------------------------------------------------------

def dump_presentation(P: Presentation) -> str:
    def letter(x):
        s = P.generators[abs(x) - 1]
        return s if x > 0 else s + "^-1"

    lines = [f"generators {len(P.generators)}", " ".join(P.generators),
             f"relators {len(P.relators)}"]
    lines.extend(" ".join(letter(x) for x in r) for r in P.relators)
    return "\n".join(lines) + "\n"


def load_presentation(text: str) -> Presentation:
    lines = text.splitlines()
    try:
        tag, n = lines[0].split()
        if tag != "generators":
            raise ValueError
        gens = lines[1].split() if int(n) else []
        if len(gens) != int(n):
            raise ValueError
        tag, m = lines[2].split()
        if tag != "relators":
            raise ValueError
        index = {g: k + 1 for k, g in enumerate(gens)}
        rels = []
        for ln in lines[3:3 + int(m)]:
            word = []
            for tok in ln.split():
                if tok.endswith("^-1"):
                    word.append(-index[tok[:-3]])
                else:
                    word.append(index[tok])
            rels.append(tuple(word))
        if len(rels) != int(m):
            raise ValueError
    except (ValueError, IndexError, KeyError):
        raise InvalidInput("malformed presentation text") from None
    return Presentation(gens, rels)
