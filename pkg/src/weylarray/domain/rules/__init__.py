"""Domain rules: numerical constants and fixed conventions."""
