"""Constraints module."""
