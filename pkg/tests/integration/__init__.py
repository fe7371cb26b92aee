"""
Integration tests for lqt-kernel.
"""
