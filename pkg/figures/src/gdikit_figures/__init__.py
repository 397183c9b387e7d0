"""Plotting for gdikit sweep CSVs; a read-only consumer of the CSV artifacts."""

from .render import FigureSpec, build_figure, render

__all__ = ["FigureSpec", "build_figure", "render"]
