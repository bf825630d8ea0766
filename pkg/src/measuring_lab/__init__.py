"""Desk-scale exact laboratory for measuring comonoids, comodules and fibred categories."""

__version__ = "0.1.0"
