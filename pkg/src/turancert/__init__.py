"""Exact asymptotics and certified inequalities for P-recursive sequences.

The package computes ratio and u_n = a_{n-1} a_{n+1} / a_n^2 expansions with
explicit error orders, decides eventual cubic-Turan and iterated
log-concavity inequalities, and produces finite certificates (two-sided
ratio and u windows, corner polynomials, explicit thresholds) that a small
independent checker can replay.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
