"""Graph braid groups via discrete Morse theory."""

__version__ = "0.1.0"
