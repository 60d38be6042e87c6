"""Polya urns on finite hypergraphs: mean-field analysis and exact simulation."""

try:
    from ._polyurn import *  # noqa: F401,F403
    from ._polyurn import __version__  # noqa: F401
except ImportError:  # development tree: extension lives on PYTHONPATH
    from _polyurn import *  # noqa: F401,F403
    from _polyurn import __version__  # noqa: F401
