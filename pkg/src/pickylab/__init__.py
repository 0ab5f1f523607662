"""Desk-scale workbench for picky elements, subnormalizers and local-global character checks."""

__version__ = "0.1.0"
