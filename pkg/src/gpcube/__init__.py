"""Edge general position sets in partial cubes."""
