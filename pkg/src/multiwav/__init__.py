"""Haar-Schauder multiwavelets."""
