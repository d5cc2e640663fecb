"""Fundamental group of E(2, G) for finite G.

With the vertex ``1`` as basepoint, pi_1(E(2, G)) is generated by symbols
``x_{g,h}`` (the loop 1 -> g -> h -> 1 along edges) subject to
``x_{g,1} = x_{1,g} = 1`` and ``x_{g,h} x_{h,k} x_{k,g} = 1`` whenever
``{g, h, k}`` is affinely commutative.  The commutator map sends
``x_{g,h}`` to ``[g, h]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import FiniteGroup, Subgroup, generate_subgroup
from .homology import HomologyGroup
from .presentation import (
    CosetOverflow,
    Presentation,
    abelianization,
    canonical_rotation,
    coset_enumeration,
    tietze_simplify,
)
from .simplicial import DEFAULT_BUDGET, enumerate_e2_all

TRIVIAL = "Trivial"
NONTRIVIAL = "Nontrivial"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Pi1Generator:
    g: int
    h: int

    def symbol(self, G: FiniteGroup) -> str:
        return f"x_{G.labels[self.g]}_{G.labels[self.h]}"


def generator_index(G: FiniteGroup, g: int, h: int) -> int:
    """1-based letter of ``x_{g,h}``."""
    return g * G.order + h + 1


def pi1_generators(G: FiniteGroup):
    return [Pi1Generator(g, h) for g in range(G.order) for h in range(G.order)]


def pi1_presentation(G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> Presentation:
    """The edge-loop presentation, with triple relators for every ordered
    affinely commutative triple (repeats allowed), deduplicated up to
    rotation."""
    gens = [x.symbol(G) for x in pi1_generators(G)]
    letter = lambda g, h: generator_index(G, g, h)  # noqa: E731
    rels = []
    seen = set()

    def add(word):
        key = canonical_rotation(word)
        if key not in seen:
            seen.add(key)
            rels.append(word)

    for g in range(G.order):
        add((letter(g, 0),))
        add((letter(0, g),))
    for g, h, k in enumerate_e2_all(G, 2, budget=budget):
        add((letter(g, h), letter(h, k), letter(k, g)))
    return Presentation(gens, rels)


def push_through_commutator(G: FiniteGroup, word) -> int:
    """Image of a word in the x_{g,h} under ``x_{g,h} -> [g,h]``."""
    ct, t, inv = G.commutator_table, G.table, G.inverse
    acc = 0
    n = G.order
    for x in word:
        g, h = divmod(abs(x) - 1, n)
        c = ct[g][h]
        acc = t[acc][c if x > 0 else inv[c]]
    return acc


def commutator_hom_image(G: FiniteGroup) -> Subgroup:
    """Subgroup generated by the images ``[g,h]`` of all generators ``x_{g,h}``."""
    images = {push_through_commutator(G, (generator_index(G, g, h),))
              for g in range(G.order) for h in range(G.order)}
    return generate_subgroup(G, images)


@dataclass
class TrivialityCertificate:
    verdict: str
    witness: str
    abelianization: HomologyGroup | None = None
    commutator_image_order: int | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "abelianization": self.abelianization.as_dict() if self.abelianization else None,
            "commutator_image_order": self.commutator_image_order,
            **self.details,
        }


def pi1_trivial_certificate(G: FiniteGroup, max_cosets: int = 1_000_000,
                            tietze_rounds: int = 1000,
                            budget: int = DEFAULT_BUDGET) -> TrivialityCertificate:
    """Decide triviality of pi_1(E(2, G)) with a checkable witness.

    Nontrivial when the abelianization is nonzero or the commutator map has
    nontrivial image; Trivial when Tietze moves empty the presentation or
    coset enumeration over the trivial subgroup closes with one coset;
    Unknown if neither happens within the limits.
    """
    P = pi1_presentation(G, budget=budget)
    ab = abelianization(P)
    image = commutator_hom_image(G)
    reasons = []
    if not ab.is_zero:
        reasons.append(f"abelianization {ab}")
    if image.order > 1:
        reasons.append(f"c* surjects onto [G,G] of order {image.order}")
    if reasons:
        return TrivialityCertificate(NONTRIVIAL, "; ".join(reasons), ab, image.order)
    Q = tietze_simplify(P, max_rounds=tietze_rounds)
    details = {"simplified_generators": len(Q.generators),
               "simplified_relators": len(Q.relators)}
    if Q.is_empty:
        return TrivialityCertificate(TRIVIAL, "empty presentation reached", ab,
                                     image.order, details)
    try:
        cosets = coset_enumeration(Q, max_cosets=max_cosets)
    except CosetOverflow:
        cosets = None
    if cosets == 1:
        return TrivialityCertificate(TRIVIAL, "coset enumeration closed with 1 coset", ab,
                                     image.order, details)
    if cosets is not None:
        # a finite group of order > 1 with trivial abelianization is still nontrivial
        return TrivialityCertificate(NONTRIVIAL, f"coset enumeration found order {cosets}",
                                     ab, image.order, details)
    return TrivialityCertificate(UNKNOWN, "budget exhausted", ab, image.order, details)
