"""
Command-line front end of differential_ga.
This package contains one module per subcommand plus the application class.
"""

from optimizer_cli.app_core import OptimizerCLI

__all__ = ["OptimizerCLI"]
