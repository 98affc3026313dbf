"""Exact computations with degree-2 quaternionic Eisenstein series and their p-adic limits."""
