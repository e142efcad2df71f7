"""
Utility functions and classes
"""

