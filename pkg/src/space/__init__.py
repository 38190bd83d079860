"""Artefact space module."""
