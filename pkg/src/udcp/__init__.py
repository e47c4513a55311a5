"""Uniquely decodable code pairs for the binary adder channel."""

__version__ = "0.1.0"
