"""
Shared helpers: logging setup and worker-count resolution.
"""
