from src.mildp.core.config import config_manager, get_logger
from src.mildp.core.exceptions import ErrorType, MildpError

__all__ = ["config_manager", "get_logger", "ErrorType", "MildpError"]
