"""Word metrics and distortion in finitely generated metabelian groups of finite rank."""

__version__ = "0.1.0"
