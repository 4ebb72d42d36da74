"""Exact verification of a five-element generating set for U(3,1; Z[i])."""

from .exact_arith import GaussInt, GaussRat, Rat
from .form import J, GroupElement, hermitian_product, is_member, stabilizes_infinity
from .generators import GENERATORS, M1, M2, R, T1, T2, GeneratorWord, load_generators
from .langlands import LanglandsParams, decompose, recompose
from .stab_words import stab_word, verify_proof_identities
from .u2_words import enumerate_u2, u2_word

__all__ = [
    "GaussInt",
    "GaussRat",
    "Rat",
    "J",
    "GroupElement",
    "hermitian_product",
    "is_member",
    "stabilizes_infinity",
    "GENERATORS",
    "T1",
    "T2",
    "M1",
    "M2",
    "R",
    "GeneratorWord",
    "load_generators",
    "LanglandsParams",
    "decompose",
    "recompose",
    "stab_word",
    "verify_proof_identities",
    "enumerate_u2",
    "u2_word",
]

__version__ = "0.1.0"
