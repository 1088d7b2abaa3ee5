"""Tests for the KL Galois twist verifier."""

from __future__ import annotations
