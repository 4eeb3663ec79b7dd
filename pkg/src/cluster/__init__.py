"""Executable checks for cluster-tilted dimension vectors and the forms around them."""
