"""planelie package init. Keep minimal to avoid side-effects during import."""
__version__ = "1.0.0"
