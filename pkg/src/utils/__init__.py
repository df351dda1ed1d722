"""
Utility functions: logging, file formats, thread pools and fits
"""
