"""Exact-arithmetic laboratory for the reciprocal-inverse map on
projectivized symmetric matrices: iterate-degree measurement over random
prime fields, blowup-chart limit verification over exact Laurent series,
and the integer pullback model with certified spectral checks."""

__version__ = "0.1.0"
