"""
Lauricella toolkit: F_A evaluation, the fundamental solution of the
singular elliptic equation, and the Neumann problem in the hyperoctant.

Entry point: parses the command line, loads the run configuration and
dispatches to the requested command.
"""

import sys
import os

# Ensure the app package is on sys.path when running from source
APP_DIR = os.path.dirname(os.path.abspath(__file__))
if APP_DIR not in sys.path:
    sys.path.insert(0, APP_DIR)

from cli.commands import main


if __name__ == "__main__":
    sys.exit(main())
