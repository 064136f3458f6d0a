"""mildp: mildness certificates for pro-p Galois groups with restricted tame ramification."""

__version__ = "0.4.0"
