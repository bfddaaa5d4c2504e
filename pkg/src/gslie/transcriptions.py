"""Loaders for the shipped transcriptions of printed tables.

Nothing here is used as a computation input; these only feed the diffs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .algebra import LieAlgebra, Subspace
from .expr import Expr, parse


@lru_cache(maxsize=None)
def load() -> dict:
    text = resources.files("gslie").joinpath("data/printed_tables.json").read_text(encoding="utf-8")
    return json.loads(text)


def _grid(section: dict):
    basis = section["basis"]
    idx = {b: i for i, b in enumerate(basis)}
    grid = [[None] * len(basis) for _ in basis]
    for cell in section["entries"]:
        grid[idx[cell["row"]]][idx[cell["col"]]] = cell
    return grid


def commutator_cells() -> list[list[dict]]:
    return _grid(load()["commutators"])


def quotient_cells() -> list[list[dict]]:
    return _grid(load()["quotient"])


def adjoint_cells() -> list[list[dict]]:
    return _grid(load()["adjoint"])


def _algebra(cells, labels) -> LieAlgebra:
    return LieAlgebra([[[Fraction(v) for v in cell["coeffs"]] for cell in row] for row in cells], labels)


def printed_commutator_algebra() -> LieAlgebra:
    """The algebra the printed commutator table defines (it satisfies Jacobi)."""
    return _algebra(commutator_cells(), load()["commutators"]["basis"])


def printed_quotient_algebra() -> LieAlgebra:
    return _algebra(quotient_cells(), load()["quotient"]["basis"])


def printed_derived_algebra() -> Subspace:
    rows = [[Fraction(v) for v in r] for r in load()["derived_algebra"]["basis"]]
    return Subspace.span(rows, len(rows[0]))


def printed_adjoint_entry(i: int, j: int) -> tuple[str, list[Expr]]:
    cell = adjoint_cells()[i][j]
    return cell["printed"], [parse(c) for c in cell["coeffs"]]


def printed_criterion() -> dict:
    return load()["criterion"]


def printed_defining_relations() -> list[tuple[str, Expr, Expr]]:
    rels = load()["defining_equations"]["relations"]
    return [(r["printed"], parse(r["lhs"]), parse(r["rhs"])) for r in rels]


def cite(section: str) -> str:
    return load()[section]["cite"]
