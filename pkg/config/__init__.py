"""
Configuration package for the ellipticity verification toolkit
"""
