"""Shared defaults and exit codes."""
