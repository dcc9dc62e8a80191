"""
Configuration package for the Asian option boundary toolkit
"""
