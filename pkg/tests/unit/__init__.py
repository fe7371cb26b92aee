"""
Unit tests for lqt-kernel.
"""
