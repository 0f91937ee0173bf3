"""Tests for geodkit."""
