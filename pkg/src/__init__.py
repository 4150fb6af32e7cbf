"""
Date: 18-10-2026
Weak stability index of CMC hypersurfaces in spheres: exact oracles, discrete Jacobi
operator on sampled tori in S^3 and the test-function certificate.
"""
__version__ = "1.0.0"
