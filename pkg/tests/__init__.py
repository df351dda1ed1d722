"""
Test package for hypwave
"""
