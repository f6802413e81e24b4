"""Terminal output: rich tables, styles and logging setup."""
