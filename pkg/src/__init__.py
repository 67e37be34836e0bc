"""
Rainbow matching toolkit.

Exact solvers for structured classes of edge-colored graphs, a local-search
approximation on the color-line graph, and generators that turn cubic graphs
into hard instances with verifiable certificates. See docs/README.md.
"""

from .__version__ import __format_version__, __version__

__all__ = ["__version__", "__format_version__"]
