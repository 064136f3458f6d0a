from .search import SearchMode, SearchResult, SearchSpec, iter_search, run_search

__all__ = ["SearchMode", "SearchResult", "SearchSpec", "iter_search", "run_search"]
