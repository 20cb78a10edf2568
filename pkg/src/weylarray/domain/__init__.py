"""weylarray: Domain layer (pure physics, no I/O)."""
