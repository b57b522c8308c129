"""
Multiclass Ginzburg-Landau segmentation on similarity graphs.
"""

__version__ = "0.1.0"
