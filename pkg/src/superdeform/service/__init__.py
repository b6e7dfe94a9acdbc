"""HTTP service wrapping the verification engine."""
