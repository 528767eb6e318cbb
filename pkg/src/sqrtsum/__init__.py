"""Exact signs of sums of square roots of small integers, and advice that decides them cheaply."""

__version__ = "0.1.0"

from .errors import DomainError, FormatError, ResourceLimitError, SqrtSumError  # noqa: E402
from .model import DomainSpec, USSRInstance, UUSSRInstance  # noqa: E402

__all__ = [
    "DomainError",
    "DomainSpec",
    "FormatError",
    "ResourceLimitError",
    "SqrtSumError",
    "USSRInstance",
    "UUSSRInstance",
    "__version__",
]
