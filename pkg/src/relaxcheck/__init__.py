"""Grammar and style checking for Spanish by feature relaxation and error anticipation."""

__version__ = "0.1.0"
