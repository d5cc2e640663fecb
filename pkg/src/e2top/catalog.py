"""Named groups: cyclic, dihedral, symmetric, alternating, generalized
quaternion, extraspecial, and direct products of these.

Orderings are breadth-first from the identity over each group's listed
generators, ties broken by the element's raw representation (one-line
image for permutations, coordinate tuple otherwise).

CLI identifiers: ``C4``, ``D4`` (dihedral of order 8), ``S3``, ``A4``,
``Q8``, ``Q16``, ``ES+32``, ``ES-27`` and products such as ``C2xC4``.
"""

from __future__ import annotations

import math
import re
from math import gcd

from .errors import GroupTooLarge, InvalidInput, UnknownGroup
from .groups import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    center,
    closure,
    group_from_elements,
    group_from_generators,
)

DEFAULT_CATALOG = (
    "C2", "C4", "C6", "C2xC2", "C2xC4", "S3", "D4", "Q8", "D6", "A4", "Q16", "S4",
)
BIG_CATALOG = ("ES+32", "ES-32")


def _check(order, cap):
    if order > cap:
        raise GroupTooLarge(cap, f"requested group has order {order} > cap {cap}")


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("cyclic group needs n >= 1")
    _check(n, cap)
    gens = ["(" + " ".join(map(str, range(1, n + 1))) + ")"] if n > 1 else []
    return group_from_generators(gens, n, cap=cap, name=f"C{n}")


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order ``2n`` (symmetries of the n-gon)."""
    if n < 1:
        raise InvalidInput("dihedral group needs n >= 1")
    _check(2 * n, cap)
    if n == 1:
        return group_from_generators(["(1 2)"], 2, name="D1")
    if n == 2:
        return group_from_generators(["(1 2)", "(3 4)"], 4, name="D2")
    rot = "(" + " ".join(map(str, range(1, n + 1))) + ")"
    # reflection fixing vertex 1: i -> n + 2 - i
    refl = "".join(f"({i} {n + 2 - i})" for i in range(2, n // 2 + 2) if i < n + 2 - i)
    return group_from_generators([rot, refl], n, cap=cap, name=f"D{n}")


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("symmetric group needs n >= 1")
    _check(math.factorial(n), cap)
    if n == 1:
        return group_from_generators([], 1, name="S1")
    gens = ["(1 2)"]
    if n > 2:
        gens.append("(" + " ".join(map(str, range(1, n + 1))) + ")")
    return group_from_generators(gens, n, cap=cap, name=f"S{n}")


def alternating(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise InvalidInput("alternating group needs n >= 1")
    _check(max(1, math.factorial(n) // 2), cap)
    if n < 3:
        return group_from_generators([], n, name=f"A{n}")
    gens = ["(1 2 3)"]
    if n > 3:
        # an even long cycle together with (1 2 3) generates A_n
        pts = range(1, n + 1) if n % 2 else range(2, n + 1)
        gens.append("(" + " ".join(map(str, pts)) + ")")
    return group_from_generators(gens, n, cap=cap, name=f"A{n}")


_QUAT_LABELS = {
    (0, 0): "1", (1, 0): "i", (2, 0): "-1", (3, 0): "-i",
    (0, 1): "j", (1, 1): "k", (2, 1): "-j", (3, 1): "-k",
}


def quaternion(order: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Generalized quaternion group <x, y | x^2m, y^2 = x^m, y^-1 x y = x^-1>.

    Elements are pairs ``(a, b)`` meaning ``x^a y^b``.  For order 8 the
    labels are the usual ``1, i, j, k, -1, ...`` with ``x = i``, ``y = j``.
    """
    if order < 8 or order & (order - 1):
        raise InvalidInput("quaternion group order must be a power of 2, at least 8")
    _check(order, cap)
    m = order // 4

    def mul(u, v):
        a, b = u
        c, d = v
        e = a + (-c if b else c) + (m if b and d else 0)
        return (e % (2 * m), (b + d) % 2)

    elems = closure([(1, 0), (0, 1)], mul, (0, 0), cap=cap)
    if order == 8:
        labels = [_QUAT_LABELS[e] for e in elems]
    else:
        labels = [_xy_label(a, b) for a, b in elems]
    return group_from_elements(elems, mul, labels, name=f"Q{order}",
                               generators=[(1, 0), (0, 1)])


def _xy_label(a, b):
    s = ("x" + (str(a) if a > 1 else "")) if a else ""
    s += "y" if b else ""
    return s or "1"


def heisenberg(p: int) -> FiniteGroup:
    """Extraspecial group of order p^3 and exponent p (p odd): triples
    ``(a, b, c)`` with ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``."""

    def mul(u, v):
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2] + u[0] * v[1]) % p)

    gens = [(1, 0, 0), (0, 1, 0)]
    elems = closure(gens, mul, (0, 0, 0))
    labels = [f"h{a}{b}{c}" for a, b, c in elems]
    return group_from_elements(elems, mul, labels, name=f"He{p}", generators=gens)


def metacyclic_p3(p: int) -> FiniteGroup:
    """Extraspecial group of order p^3 and exponent p^2 (p odd):
    ``Z/p^2 semidirect Z/p`` with the generator acting as ``x -> x^(1+p)``."""
    q = p * p

    def mul(u, v):
        return ((u[0] + pow(1 + p, u[1], q) * v[0]) % q, (u[1] + v[1]) % p)

    gens = [(1, 0), (0, 1)]
    elems = closure(gens, mul, (0, 0))
    labels = [_xy_label(a, b) if b < 2 else f"x{a}y{b}" for a, b in elems]
    return group_from_elements(elems, mul, labels, name=f"M{p}", generators=gens)


def metacyclic(m: int, n: int, r: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Split extension ``Z/m semidirect Z/n`` where the generator of ``Z/n``
    acts by ``a -> a^r``; needs ``r^n = 1 mod m``.

    Covers e.g. semidihedral (8, 2, 3), modular (8, 2, 5) and dicyclic
    groups of odd ``m`` as (m, 4, m - 1).
    """
    if m < 1 or n < 1 or pow(r, n, m) != 1 % m or gcd(r, m) != 1:
        raise InvalidInput(f"r={r} does not define an action of Z/{n} on Z/{m}")
    _check(m * n, cap)

    def mul(u, v):
        return ((u[0] + pow(r, u[1], m) * v[0]) % m, (u[1] + v[1]) % n)

    gens = [(1 % m, 0), (0, 1 % n)]
    elems = closure(gens, mul, (0, 0), cap=cap)
    labels = [f"a{a}b{b}" for a, b in elems]
    return group_from_elements(elems, mul, labels, name=f"C{m}:{n}^{r}", generators=gens)


def _central_generator(G: FiniteGroup, p: int) -> int:
    z = [x for x in center(G).members if x != 0]
    if len(z) != p - 1:
        raise InvalidInput(f"{G.name} does not have a center of order {p}")
    return z[0]


def central_product(H: FiniteGroup, zh: int, K: FiniteGroup, zk: int, name="G"):
    """``(H x K) / <(zh, zk^-1)>`` for central elements of equal prime order.

    Returns the group and the index of the image of ``zh``.
    """
    p = H.element_order(zh)
    powers_h = [0]
    powers_k = [0]
    for _ in range(p - 1):
        powers_h.append(H.table[powers_h[-1]][zh])
        powers_k.append(K.table[powers_k[-1]][K.inverse[zk]])

    def canon(i, j):
        return min((H.table[a][i], K.table[b][j]) for a, b in zip(powers_h, powers_k))

    def mul(u, v):
        return canon(H.table[u[0]][v[0]], K.table[u[1]][v[1]])

    gens = [canon(g, 0) for g in H.generators] + [canon(0, g) for g in K.generators]
    elems = closure(gens, mul, (0, 0))
    labels = [f"[{H.labels[i]};{K.labels[j]}]" for i, j in elems]
    G = group_from_elements(elems, mul, labels, name=name, generators=gens)
    return G, elems.index(canon(zh, 0))


def extraspecial(p: int, r: int, sign: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Extraspecial group of order ``p^(1+2r)``, built as an iterated central
    product of order-p^3 factors.  ``sign`` is +1 or -1: for p = 2 the
    factors are D8s with one Q8 when sign is -1; for odd p they are
    exponent-p Heisenberg groups with one exponent-p^2 factor when sign is -1.
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise InvalidInput(f"extraspecial needs a prime p, got {p}")
    if r < 1 or sign not in (1, -1):
        raise InvalidInput("extraspecial needs r >= 1 and sign in {+1, -1}")
    order = p ** (1 + 2 * r)
    _check(order, cap)
    if p == 2:
        plus, minus = dihedral(4), quaternion(8)
    else:
        plus, minus = heisenberg(p), metacyclic_p3(p)
    factors = [plus] * (r - 1) + [minus if sign < 0 else plus]
    G = factors[0]
    z = _central_generator(G, p)
    for F in factors[1:]:
        G, z = central_product(G, z, F, _central_generator(F, p))
    G.name = f"ES{'+' if sign > 0 else '-'}{order}"
    return G


def direct_product(*groups: FiniteGroup, cap: int = DEFAULT_ORDER_CAP, name=None) -> FiniteGroup:
    if not groups:
        raise InvalidInput("direct product of no groups")
    _check(math.prod(G.order for G in groups), cap)
    k = len(groups)
    ident = (0,) * k

    def mul(u, v):
        return tuple(G.table[a][b] for G, a, b in zip(groups, u, v))

    gens = []
    for i, G in enumerate(groups):
        own = G.generators or tuple(range(1, G.order))
        for g in own:
            e = list(ident)
            e[i] = g
            gens.append(tuple(e))
    elems = closure(gens, mul, ident, cap=cap)
    labels = ["[" + ";".join(G.labels[a] for G, a in zip(groups, e)) + "]" for e in elems]
    return group_from_elements(
        elems, mul, labels, name=name or "x".join(G.name for G in groups), generators=gens
    )


_BUILDERS = {
    "cyclic": (cyclic, 1),
    "dihedral": (dihedral, 1),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "quaternion": (quaternion, 1),
    "extraspecial": (extraspecial, 3),
    "metacyclic": (metacyclic, 3),
}


def catalog_group(name: str, params=(), factors=None, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a catalog group from a family name and integer parameters.

    ``catalog_group("dihedral", [4])`` has order 8;
    ``catalog_group("extraspecial", [2, 2, 1])`` is ES+32.  For
    ``"direct_product"`` pass ``factors`` as a list of ``(name, params)``.
    """
    if name == "direct_product":
        if not factors:
            raise InvalidInput("direct_product needs factors")
        parts = [catalog_group(n, p, cap=cap) for n, p in factors]
        return direct_product(*parts, cap=cap)
    try:
        builder, nparams = _BUILDERS[name]
    except KeyError:
        raise UnknownGroup(f"unknown catalog family {name!r}") from None
    params = list(params)
    if len(params) != nparams:
        raise InvalidInput(f"{name} takes {nparams} integer parameter(s)")
    return builder(*params, cap=cap)


_TOKEN = re.compile(r"^(C|D|S|A|Q)(\d+)$|^ES([+-])(\d+)$")


def _prime_power(n):
    for p in range(2, n + 1):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
    return None


def group_by_name(name: str, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Resolve a CLI identifier such as ``S3``, ``Q16``, ``ES-32``, ``C2xC4``."""
    parts = name.split("x")
    if len(parts) > 1:
        groups = [group_by_name(p, cap=cap) for p in parts]
        return direct_product(*groups, cap=cap, name=name)
    m = _TOKEN.match(name)
    if not m:
        raise UnknownGroup(f"unknown group name {name!r}")
    if m.group(1):
        fam, n = m.group(1), int(m.group(2))
        builder = {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating,
                   "Q": quaternion}[fam]
        G = builder(n, cap=cap)
    else:
        order = int(m.group(4))
        pe = _prime_power(order)
        if pe is None or pe[1] < 3 or pe[1] % 2 == 0:
            raise InvalidInput(f"{order} is not the order of an extraspecial group")
        G = extraspecial(pe[0], (pe[1] - 1) // 2, 1 if m.group(3) == "+" else -1, cap=cap)
    G.name = name
    return G


def catalog(names=DEFAULT_CATALOG, max_order=None, cap: int = DEFAULT_ORDER_CAP):
    """Build the named groups, skipping those above ``max_order``."""
    out = []
    for n in names:
        G = group_by_name(n, cap=cap)
        if max_order is None or G.order <= max_order:
            out.append(G)
    return out
