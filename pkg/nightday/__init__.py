"""Intra-day vs overnight volatility cross-correlations, measured with rank statistics 🌙☀️"""
__version__ = "v0.1.0"
