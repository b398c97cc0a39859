"""Rational homotopy tools for circle quotients of odd-sphere-like spaces.

Free graded-commutative algebras with differentials, exact cohomology,
finiteness and c-symplectic tests for Borel (KS) models, the degree criterion
for products of odd spheres, toral-rank Hasse diagrams and a replayable
catalog of worked models.
"""
from .algebra import Element, FreeGCA, Generator, parse_element
from .cohomology import betti, betti_table, hard_lefschetz, is_coboundary, is_cocycle, toomer
from .csym import (CsymStatus, DegreeTuple, Finiteness, csym_polarized, finiteness, is_c_symplectic,
                   thm12_criterion, thm12_witness, thm26_necessary)
from .differential import KSExtension, Model, check_d_squared, formal_dimension, load_model, parse_model

__all__ = [
    "Element", "FreeGCA", "Generator", "parse_element",
    "betti", "betti_table", "hard_lefschetz", "is_coboundary", "is_cocycle", "toomer",
    "CsymStatus", "DegreeTuple", "Finiteness", "csym_polarized", "finiteness", "is_c_symplectic",
    "thm12_criterion", "thm12_witness", "thm26_necessary",
    "KSExtension", "Model", "check_d_squared", "formal_dimension", "load_model", "parse_model",
]
