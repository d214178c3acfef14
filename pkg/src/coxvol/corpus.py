"""Access to the bundled example polyhedra."""

from __future__ import annotations

from importlib import resources

from .poly_model import LabeledPolyhedron, parse_polyhedron

CORPUS = ("tetrahedron", "cube_all2", "lambert_cube", "triangular_prism", "pyramid")


def corpus_text(name: str) -> str:
    if name not in CORPUS:
        raise KeyError(f"unknown corpus polyhedron {name!r}; have {CORPUS}")
    return resources.files("coxvol.data").joinpath(f"{name}.apoly").read_text()


def load(name: str) -> LabeledPolyhedron:
    return parse_polyhedron(corpus_text(name))
