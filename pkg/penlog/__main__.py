import sys

from penlog.Integration_module.main import main

if __name__ == "__main__":
    sys.exit(main())
