"""Exact computations for intersections of quadrics and moment-angle manifolds."""
