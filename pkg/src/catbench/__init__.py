"""catbench: a finite-category engine and a deterministic synthetic-web
benchmark harness for auditing multi-hop research agents."""

__version__ = "0.1.0"
