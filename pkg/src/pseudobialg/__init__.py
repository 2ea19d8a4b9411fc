"""Exact computations with Lie pseudoalgebras and Lie pseudo-bialgebras over H = U(d)."""
from .annihilation import AnnihilationAlgebra, ConvolutionMap, convolution_bracket, phi, phi_inv
from .bialgebra import (
    Cobracket,
    Cochain,
    check_coalgebra,
    check_cocycle,
    classical_yang_baxter,
    coboundary_delta,
    cobracket_to_pseudobracket,
    cochain_differential,
    cybe_check,
    dualize_to_cobracket,
    hplus_reduce,
    round_trip_discrepancy,
)
from .catalog import CatalogEntry, build_current, build_gc, build_solvable, default_catalog
from .dual import DualElement, TruncationInsufficient
from .fileformat import ParseError, parse_definition, serialize
from .hopf import HopfElement, LieAlgebraPresentation, TensorPower
from .manin import ManinTriple, PseudoForm, bialgebra_from_manin, double, manin_from_bialgebra
from .pseudoalg import BracketTable, check_conformal_axioms, check_lie_axioms, x_bracket
from .pseudotensor import FreeModule, ModuleElement, PseudoTensor, fourier, normalize

__all__ = [
    "AnnihilationAlgebra",
    "BracketTable",
    "CatalogEntry",
    "Cobracket",
    "Cochain",
    "ConvolutionMap",
    "DualElement",
    "FreeModule",
    "HopfElement",
    "LieAlgebraPresentation",
    "ManinTriple",
    "ModuleElement",
    "ParseError",
    "PseudoForm",
    "PseudoTensor",
    "TensorPower",
    "TruncationInsufficient",
    "bialgebra_from_manin",
    "build_current",
    "build_gc",
    "build_solvable",
    "check_coalgebra",
    "check_cocycle",
    "check_conformal_axioms",
    "check_lie_axioms",
    "classical_yang_baxter",
    "coboundary_delta",
    "cobracket_to_pseudobracket",
    "cochain_differential",
    "convolution_bracket",
    "cybe_check",
    "default_catalog",
    "double",
    "dualize_to_cobracket",
    "fourier",
    "hplus_reduce",
    "manin_from_bialgebra",
    "normalize",
    "parse_definition",
    "phi",
    "phi_inv",
    "round_trip_discrepancy",
    "serialize",
    "x_bracket",
]
