"""Stream reasoning over LARS+ programs through existential rules."""
