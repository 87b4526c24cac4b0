"""A workbench for Yang-Mills-type theories and their extensions.

Note: Running this file directly calls the command line entry point in debug
mode (seed 42), which is what profilers that launch a file need. Normal
execution goes through 'python -m ymt'.
"""
from ymt.config import VERSION as __version__

if __name__ == '__main__':
    from ymt.__main__ import main

    main(argv=['rank', 'enumerate', '--z', '7'], debug_mode=True)
