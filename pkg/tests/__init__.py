"""
Tests unitaires pour pssieve
"""
