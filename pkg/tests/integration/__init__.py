"""Integration tests for Starship."""