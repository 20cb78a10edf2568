"""Domain ports: abstract interfaces (contracts) for infrastructure."""
