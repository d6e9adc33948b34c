"""Certificate-producing constructions: Q-ideal checks, the Engel chain, corollaries and the special Jordan pipeline."""
