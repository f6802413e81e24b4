"""Test package for source-loc."""
