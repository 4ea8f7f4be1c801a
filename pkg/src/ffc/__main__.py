import sys

from ffc.cli import main

if __name__ == "__main__":
    sys.exit(main())
