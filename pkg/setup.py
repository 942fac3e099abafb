"""
Configuration du package pssieve
Compatible avec pip et setuptools
"""

from setuptools import setup

if __name__ == "__main__":
    setup()
