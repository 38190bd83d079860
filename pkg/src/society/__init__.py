"""Society simulation module."""
