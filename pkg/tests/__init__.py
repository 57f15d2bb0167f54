"""Tests for hcfsim."""
