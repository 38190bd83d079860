"""Social network module."""
