"""Conic divisorial ideal classes of Hibi rings and stable set rings."""

__version__ = "0.1.0"
