"""
Test suite for the ellipticity verification toolkit
"""
