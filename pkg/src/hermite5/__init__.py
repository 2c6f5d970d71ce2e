"""Primitive elements with Hermite-form minimal polynomials in quintic extensions of finite fields."""

__version__ = "0.1.0"
