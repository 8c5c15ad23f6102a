"""Test package for equilef"""
