"""Domain services: stateless numerical operations."""
