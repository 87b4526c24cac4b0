"""Print based logging."""
import sys
from enum import Enum


class Verbosity(Enum):
    """An enum capturing different verbosity levels for logging."""
    SILENT = 0
    MINIMAL = 1
    FULL = 2


class Logger:
    """Prints messages to stderr depending on the chosen verbosity.

    Artifacts go to stdout or to files, so anything printed here never ends
    up in them.
    """

    def __init__(self, verbosity=Verbosity.MINIMAL, stream=None):
        """Initialise the logger.

        Arguments:
            verbosity: how much should be printed to console.
            stream: where to print to, stderr by default.
        """
        self.verbosity = verbosity
        self.stream = stream

    def print(self, msg, format_args=None, verbosity=Verbosity.MINIMAL):
        """Print a message to console if the verbosity level is high enough.

        Arguments:
            msg: the message to print.
            format_args: arguments that should be formatted into the message,
                         using the old %-style formatting.
            verbosity: the minimum verbosity level this message needs to be
                       printed.
        """
        if self.verbosity.value < verbosity.value:
            return

        if format_args is not None:
            msg = msg % format_args

        print(msg, file=self.stream if self.stream else sys.stderr)


# Shared by the library modules. The CLI changes its verbosity.
log = Logger(Verbosity.SILENT)
