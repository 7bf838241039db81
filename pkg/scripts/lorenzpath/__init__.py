"""Robust paths in scenario graphs: Lorenz dominance, label search, OWA, oracle."""
