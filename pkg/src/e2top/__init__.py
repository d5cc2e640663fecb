"""Homology and fundamental groups of the space E(2, G) of affinely
commuting elements of a finite group G, and of its companion models."""

from .catalog import catalog_group, direct_product, group_by_name
from .chains import ChainComplex, IntMatrix, dump_chain_complex, load_chain_complex
from .errors import (
    GroupTooLarge,
    InvalidDegree,
    InvalidInput,
    NotFiniteDimensional,
    TooLarge,
    UnknownGroup,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    abelian_subgroups,
    center,
    commutator,
    commutator_subgroup,
    group_from_generators,
    is_abelian,
    is_transitively_commutative,
)
from .homology import HomologyGroup, SNFResult, euler_characteristic, homology, smith_normal_form
from .pi1 import (
    TrivialityCertificate,
    commutator_hom_image,
    pi1_presentation,
    pi1_trivial_certificate,
)
from .presentation import Presentation, abelianization, tietze_simplify
from .simplicial import (
    check_simplicial_homotopy,
    commutator_simplicial_map,
    coset_poset_complex,
    e2_chain_complex,
    ebar_chain_complex,
    enumerate_commuting_tuples,
    enumerate_e2_nondegenerate,
    is_affinely_commutative,
)

__version__ = "0.1.0"
