"""
motionshift: motional carrier frequency shifts of a laser-driven trapped ion
"""
__version__ = '1.0.0'
