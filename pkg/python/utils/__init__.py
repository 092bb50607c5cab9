"""Utility modules for modkernel"""
