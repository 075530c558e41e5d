"""Shipped specifications, proof scripts and models."""

from __future__ import annotations

from importlib import resources


def read_text(*parts: str) -> str:
    return resources.files(__name__).joinpath(*parts).read_text()


def load_spec(name: str = "exceptions.dexc"):
    from ..formats import parse_spec
    return parse_spec(read_text(name))


def proof_names() -> list:
    root = resources.files(__name__).joinpath("proofs")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".dproof"))
