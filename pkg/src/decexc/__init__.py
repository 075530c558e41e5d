"""Decorated proofs for exceptions: terms, a proof kernel, expansion to an
explicit exception-passing logic, finite-model semantics and try/catch."""

__version__ = "0.1.0"
