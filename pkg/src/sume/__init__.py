"""sume: control suite for a shared-usage multi-screen wall."""

__version__ = "0.1.0"
