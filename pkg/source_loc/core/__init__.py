"""Graph model, datasets, diffusion simulation and pair corpora."""
