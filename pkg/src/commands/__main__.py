"""python -m src.commands -> mildp CLI."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[2]))

from src.commands.main import main  # noqa: E402

if __name__ == "__main__":
    main()
