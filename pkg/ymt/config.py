"""Settings read from the environment.

None of these need to be set, the defaults give a serial run that writes to
data/runs/.
"""
import os

# Maximum number of worker threads used by verification sweeps.
THREADS = max(1, int(os.getenv('YMT_THREADS', '1')))

# Where Workbench.dump writes run directories when no path is given.
OUTPUT_DIR = os.getenv('YMT_OUTPUT_DIR', 'data/runs/')

VERSION = '0.3.0'
