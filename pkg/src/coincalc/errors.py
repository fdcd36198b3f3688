"""Exception hierarchy shared by all layers.

Three outcomes matter to callers (and map to CLI exit codes):

* ``UsageError`` -- the request itself is malformed (bad coordinates,
  violated preconditions, ambient mismatches).  Exit code 1.
* ``DataError``  -- a database file failed to load or validate.  The
  message always names the offending record.  Exit code 1.
* ``GapError``   -- the request is well formed but the answer is not
  covered by the shipped data or by the closed-form results this
  package implements.  Never guessed at; surfaced verbatim.  Exit
  code 2.
"""

from __future__ import annotations


class CoincalcError(Exception):
    """Base class for every error raised by this package."""


class UsageError(CoincalcError, ValueError):
    """The caller violated a documented precondition."""


class DataError(CoincalcError):
    """A database file is malformed or fails a validation check."""


class GapError(CoincalcError):
    """The answer exists mathematically but is not derivable from the
    shipped data; a distinct outcome from user error."""
