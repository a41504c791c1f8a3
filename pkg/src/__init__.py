"""
chowcheck - Source Package
"""
