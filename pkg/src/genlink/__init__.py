"""Exact generic linkage of codimension-two monomial ideals."""
