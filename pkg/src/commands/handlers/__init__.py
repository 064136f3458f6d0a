from . import certify, classgroup, linking, prop34, search, version

__all__ = ["certify", "classgroup", "linking", "prop34", "search", "version"]
