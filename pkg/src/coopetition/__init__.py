"""Exact data-sharing mediators for competing retailers."""
