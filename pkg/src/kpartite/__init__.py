"""Времена переходов и предельные законы для K-дольных сетей CSMA с жёсткими конфликтами."""

__version__ = "0.1.0"
