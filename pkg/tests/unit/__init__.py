"""Unit tests for Starship."""