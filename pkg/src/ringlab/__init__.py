"""Finite rings, regularity and the VNL property, computed exactly."""

from __future__ import annotations

__version__ = "0.1.0"
