"""Linking numbers, Koch presentations and mildness certificates."""

from .linking import LinkingData, build_linking_data
from .mildness import MildnessCertificate, Verdict, certify_mild, check_prop34

__all__ = ["LinkingData", "build_linking_data", "MildnessCertificate", "Verdict", "certify_mild", "check_prop34"]
