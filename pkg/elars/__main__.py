import sys

from elars.cli import main

if __name__ == '__main__':
    sys.exit(main())
