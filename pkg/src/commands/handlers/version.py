import platform
import sys
from importlib import metadata

from src.commands.config import MildpConfig
from src.commands.utils.utils import CLIResult, Colors, Output
from src.mildp.core.config import config_manager

ARITHMETIC_STACK = ("sympy", "pydantic", "pyyaml")


def dependency_versions() -> dict:
    """Installed versions of the packages certificates are computed and serialized with."""
    versions = {}
    for name in ARITHMETIC_STACK:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "not installed"
    return versions


def handle_version(args) -> CLIResult:
    """CLI handler for version command."""
    Output.print(f"{Colors.BOLD}mildp{Colors.RESET} {Colors.GREEN}v{MildpConfig.VERSION}{Colors.RESET}")

    if getattr(args, "verbose", False):
        Output.print()
        Output.field("schema", MildpConfig.SCHEMA_VERSION)
        Output.field("log level", config_manager.setting("logging", "level"))
        Output.field("max |S|", config_manager.setting("certify", "max_cardinality"))
        Output.field("python", platform.python_version())
        Output.field("platform", sys.platform)
        for name, version in dependency_versions().items():
            Output.field(name, version)

    return CLIResult(success=True)
