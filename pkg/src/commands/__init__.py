"""
mildp CLI Commands Module

Command-line access to class groups, linking numbers, mildness certificates,
the four-place criterion and the place search.

Usage:
    from src.commands.main import main
    main()

Or directly from terminal:
    python -m src.commands classgroup -d -23 -p 3
    python -m src.commands certify -d -23 -p 3 --places 13:4,211:71,67,31:15
"""

from src.commands.main import main

__all__ = ["main"]
