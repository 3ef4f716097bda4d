"""Unit tests for scaling engine services."""
