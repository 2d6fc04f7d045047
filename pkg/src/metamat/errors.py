"""Exception hierarchy shared by the parsers, the store and the engine."""


class MetamatError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MetamatError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class ArityConflictError(MetamatError):
    pass


class SafetyError(MetamatError):
    def __init__(self, variable, rule_text=""):
        self.variable = variable
        msg = f"unsafe rule: head variable {variable} does not occur in the body"
        if rule_text:
            msg += f" ({rule_text})"
        super().__init__(msg)


class EmptyQueueError(MetamatError, IndexError):
    pass


class UnknownMetaConstantError(MetamatError, KeyError):
    pass


class DomainMismatchError(MetamatError, ValueError):
    pass
