"""Embedding-closed generalized quantifiers on finite relational structures."""

__version__ = "0.1.0"
