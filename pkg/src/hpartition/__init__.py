"""Exact solvers for Partition into H."""
