# main.py
import sys

from dspc.cli import main

if __name__ == "__main__":
    sys.exit(main())
