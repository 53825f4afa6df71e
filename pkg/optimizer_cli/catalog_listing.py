"""
Module for the ``list`` and ``optima`` subcommands.
"""

from typing import Any

from differential_ga import catalog, load_reference_optima


def list_functions(app_instance: Any) -> None:
    """Prints id, dimension and bounds of every test function."""
    for spec in catalog():
        lower, upper = spec.domain.lower, spec.domain.upper
        if len(set(lower.tolist())) == 1 and len(set(upper.tolist())) == 1:
            bounds = f"[{lower[0]:g}, {upper[0]:g}]^{spec.dimension}"
        else:
            bounds = " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in zip(lower, upper))
        print(f"{spec.id}\tn={spec.dimension}\t{bounds}")


def print_optima(app_instance: Any) -> None:
    """Prints the reference-optima fixture with the provenance of each value."""
    table = load_reference_optima()
    for row in table.itertuples(index=False):
        print(f"{row.function}\t{row.optimum:.12g}\t{row.oracle}")
