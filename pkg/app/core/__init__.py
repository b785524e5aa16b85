"""
Core functionality: exceptions
"""
