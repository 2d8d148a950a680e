"""Heat kernels, Riesz and Bessel potentials and Sobolev norms on graded nilpotent Lie groups."""

import os as _os
from pathlib import Path as _Path

_bundled = _Path(__file__).with_name("data")
if _bundled.is_dir():
    _os.environ.setdefault("GRADECALC_DATA", str(_bundled))

from ._core import (  # noqa: E402
    BudgetExceeded,
    ConfigError,
    Group,
    GroupParseError,
    OperatorParseError,
    Workspace,
    builtin_groups,
    group_check,
    verify,
    version,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConfigError",
    "Group",
    "GroupParseError",
    "OperatorParseError",
    "Workspace",
    "builtin_groups",
    "group_check",
    "verify",
    "version",
]
