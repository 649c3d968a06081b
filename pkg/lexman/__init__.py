"""Shifts, compressions and lex-plus-powers machinery for monomial ideals."""
