"""Tests for aqc-cavity."""
