"""Allow python -m klgalois."""

from .cli import run

if __name__ == "__main__":
    run()
