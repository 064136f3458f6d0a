from src import mildp
from src.mildp.core.config import config_manager


class MildpConfig:
    """CLI-level constants and output settings."""

    VERSION = mildp.__version__
    SCHEMA_VERSION = 1

    @staticmethod
    def json_indent() -> int:
        return int(config_manager.setting("output", "json_indent", 2))
