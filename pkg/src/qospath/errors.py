"""Exception hierarchy shared by every module."""


class QosPathError(Exception):
    """Base class for all errors raised by qospath."""


class TopologyParseError(QosPathError):
    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class TopologyValidationError(QosPathError):
    pass


class InfeasibleError(QosPathError):
    """Source and destination cannot be joined by admissible links."""


class DegeneratePopulationError(QosPathError):
    """Every member of a population has zero selection probability."""


class NoFeasiblePathError(QosPathError):
    pass


class OracleSizeError(QosPathError):
    pass
