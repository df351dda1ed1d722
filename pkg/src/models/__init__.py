"""
Data models for spaces, radial profiles, atoms and reports
"""
