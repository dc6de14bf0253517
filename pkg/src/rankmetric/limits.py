"""Enumeration caps.

Every exhaustive search checks its size against a cap before doing any work
and raises :class:`~rankmetric.errors.EnumerationTooLarge` instead of
silently truncating. Caps can be overridden for a block of code::

    with override_caps(10**4):
        hierarchy(code, "parity")
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar

from .errors import EnumerationTooLarge

TABLE_BOUND = 2**20
SUBSPACE_CAP = 10**8
CODEWORD_CAP = 2**22
QSYSTEM_ELEMENT_CAP = 2**20

_override: ContextVar[int | None] = ContextVar("rankmetric_cap_override", default=None)

_DEFAULTS = {
    "subspaces": SUBSPACE_CAP,
    "codewords": CODEWORD_CAP,
    "qsystem": QSYSTEM_ELEMENT_CAP,
}


def get_cap(kind: str) -> int:
    value = _override.get()
    if value is not None:
        return value
    return _DEFAULTS[kind]


def check_cap(kind: str, size: int, what: str) -> None:
    cap = get_cap(kind)
    if size > cap:
        raise EnumerationTooLarge(what, size, cap)


@contextlib.contextmanager
def override_caps(cap: int | None):
    """Temporarily replace every enumeration cap by ``cap`` (``None`` = defaults)."""
    token = _override.set(cap)
    try:
        yield
    finally:
        _override.reset(token)
