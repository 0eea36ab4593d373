import sys

from src.cli import RomanPyCLI, run

if __name__ == "__main__":
    if len(sys.argv) > 1:
        sys.exit(run(sys.argv[1:]))
    cli = RomanPyCLI()
    cli.main_loop()
