"""
Prefect flows running the verification suites
"""
