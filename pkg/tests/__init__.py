"""Tests for modkernel"""
