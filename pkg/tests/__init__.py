"""EvoSort test suite"""
