"""Exhaustive, isomorphism-free generation of cubic pregraphs that admit a
2-factor of C4 quotients, and of the Delaney-Dress graphs built on them."""

__version__ = "0.1.0"
