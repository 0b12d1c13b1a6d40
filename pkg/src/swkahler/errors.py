"""Exception types shared by the library and the command-line front end."""


class DomainError(ValueError):
    """A mathematical precondition or consistency identity was violated.

    The message names the violated identity so that callers (and the CLI)
    can report it verbatim.
    """


class MalformedInput(ValueError):
    """Input could not be parsed into the expected record shape."""
