"""Instance handling, theorem/conjecture checks and randomised search."""
