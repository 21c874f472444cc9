"""Batch corpus analytics for longitudinal multi-label sentiment analysis
of Sinophobic social-media posts."""

__version__ = "0.1.0"
