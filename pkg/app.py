"""
Main entry point of the differential-ga command line.
This file imports the application class from the optimizer_cli package.
"""

import sys
from typing import Optional, Sequence

from optimizer_cli import OptimizerCLI


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main function that parses the arguments and runs the requested subcommand.
    Returns the process exit status.
    """
    app = OptimizerCLI(argv)
    return app.run()


if __name__ == "__main__":
    sys.exit(main())
