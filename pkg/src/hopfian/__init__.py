"""Rewriting systems, finite semigroup tables and semigroup acts."""
