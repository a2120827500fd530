"""Test suite for Starship AI GitHub Knowledge Engine."""