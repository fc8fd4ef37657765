"""Seriality of modular group algebras of finite groups: a decision
engine combining structural reductions, an arithmetic classifier over the
simple-group families, and an exact linear-algebra oracle over F_p."""

__version__ = "0.1.0"

from .permgroup import PermGroup, Permutation, CapExceeded  # noqa: F401
from .groupspec import parse_spec, build_named, ParseError  # noqa: F401
