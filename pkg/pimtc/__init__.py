"""Bitwise triangle counting and processing-in-memory data-flow simulation."""
