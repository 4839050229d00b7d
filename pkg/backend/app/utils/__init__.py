"""Bit-level helpers for packed truth tables."""
