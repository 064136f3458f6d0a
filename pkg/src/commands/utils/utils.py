import sys
import time
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

from pydantic import BaseModel

from src.commands.config import MildpConfig
from src.mildp.core.config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1


@dataclass
class CLIResult:
    success: bool
    message: str = ""
    exit_code: int = EXIT_OK

    @classmethod
    def from_verdict(cls, holds: bool, positive: str = "", negative: str = "") -> "CLIResult":
        """A well-formed run whose answer may be negative: exit 0 if it holds, 1 otherwise."""
        if holds:
            return cls(success=True, message=positive)
        return cls(success=False, message=negative, exit_code=EXIT_NEGATIVE)


class Colors:
    RESET = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"
    RED = "\033[91m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    BLUE = "\033[94m"
    CYAN = "\033[96m"
    GRAY = "\033[90m"

    @staticmethod
    def disable_if_not_tty():
        if not sys.stdout.isatty():
            for attr in dir(Colors):
                if not attr.startswith("_") and attr.isupper():
                    setattr(Colors, attr, "")


class Output:
    @staticmethod
    def info(msg: str):
        print(f"{Colors.CYAN}ℹ {Colors.RESET}{msg}")

    @staticmethod
    def success(msg: str):
        print(f"{Colors.GREEN}✓ {Colors.RESET}{msg}")

    @staticmethod
    def warning(msg: str):
        print(f"{Colors.YELLOW}⚠ {Colors.RESET}{msg}", file=sys.stderr)

    @staticmethod
    def error(msg: str):
        print(f"{Colors.RED}✗ {Colors.RESET}{msg}", file=sys.stderr)

    @staticmethod
    def debug(msg: str, verbose: bool = False):
        if verbose:
            print(f"{Colors.GRAY}◆ {Colors.RESET}{msg}", file=sys.stderr)

    @staticmethod
    def section(title: str):
        print(f"\n{Colors.BOLD}{Colors.BLUE}{title}{Colors.RESET}")

    @staticmethod
    def field(name: str, value: Any, width: int = 14):
        print(f"  {Colors.DIM}{name + ':':<{width}}{Colors.RESET} {value}")

    @staticmethod
    def mark(flag: bool) -> str:
        return f"{Colors.GREEN}yes{Colors.RESET}" if flag else f"{Colors.RED}no{Colors.RESET}"

    @staticmethod
    def matrix(rows: Iterable[Sequence[int]], indent: int = 6):
        for row in rows:
            print(" " * indent + "[" + " ".join(f"{x:>3}" for x in row) + " ]")

    @staticmethod
    def table(title: str, rows: Sequence, cols: Sequence, value: Callable[[Any, Any], Any],
              label: Callable[[Any], str] = str, width: int = 10):
        """Rows by columns grid; label renders the row and column headers."""
        Output.section(title)
        print(" " * width + "".join(f"{label(c):>{width}}" for c in cols))
        for r in rows:
            print(f"{label(r):>{width}}" + "".join(f"{value(r, c):>{width}}" for c in cols))

    @staticmethod
    def document(doc: BaseModel, compact: bool = False):
        """Print a JSON document, indented per output.json_indent unless compact."""
        indent = None if compact else MildpConfig.json_indent()
        print(doc.model_dump_json(indent=indent))

    @staticmethod
    def print(msg: str = ""):
        print(msg)


class Timer:
    def __init__(self, name: str = "Operation"):
        self.name = name
        self.start_time = None
        self.end_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, *args):
        self.end_time = time.perf_counter()
        logger.debug(f"[TIMER] {self.name}: {self.elapsed():.4f}s")

    def elapsed(self) -> float:
        if self.start_time is None:
            return 0.0
        end = self.end_time if self.end_time is not None else time.perf_counter()
        return end - self.start_time

    def report(self, verbose: bool = True):
        elapsed = self.elapsed()
        msg = f"{elapsed * 1000:.1f}ms" if elapsed < 1 else f"{elapsed:.2f}s"
        Output.debug(f"{self.name} completed in {msg}", verbose)
