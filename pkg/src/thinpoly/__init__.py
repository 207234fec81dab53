"""Thin polyominoes: rook polynomials, collapse data and the Charney-Davis sign."""
