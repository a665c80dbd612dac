"""Offline rendering of rieszeq CSV outputs into figure files."""

from .render import SchemaError, render_profile, render_scan, threshold_branches

__all__ = ["SchemaError", "render_profile", "render_scan", "threshold_branches"]
