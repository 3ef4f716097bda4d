"""Unit tests for the scaling engine."""
