"""Unit tests for individual scenarios."""
