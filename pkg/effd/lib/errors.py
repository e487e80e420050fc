class EffdError(Exception):
    exit_code = 1

    def __init__(self, message) -> None:
        super().__init__(message)
        self.message = message


class ParseError(EffdError):
    """ A file, flag or preset could not be read.

    `line` is the 1-based line number for line oriented files and `field`
    names the offending key, when known.

    """

    exit_code = 2

    def __init__(self, message, line=None, field=None) -> None:
        location = []
        if line is not None:
            location.append("line %d" % line)
        if field is not None:
            location.append("field '%s'" % field)
        if location:
            message = "%s: %s" % (", ".join(location), message)

        super().__init__(message)
        self.line = line
        self.field = field


class DomainError(EffdError):
    exit_code = 3


class ScheduleOverflow(EffdError):
    exit_code = 4


class InvalidWitness(EffdError):
    exit_code = 5


class SearchTimeout(EffdError):
    """ An unbounded search ran out of its step budget.

    This is an outcome, not a failure of the input: the search may well
    have terminated with more steps.

    """

    exit_code = 6

    def __init__(self, message, steps) -> None:
        super().__init__(message)
        self.steps = steps
