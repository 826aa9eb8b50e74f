"""Exception hierarchy.

Every domain error carries a short machine code, used verbatim by the CLI
in its ``{"error": code, ...}`` documents.
"""


class GTError(Exception):
    code = "error"


class NonHyperbolic(GTError):
    code = "NonHyperbolic"


class UnknownGenerator(GTError):
    code = "UnknownGenerator"


class ConstantClass(GTError):
    code = "ConstantClass"


class SurfaceMismatch(GTError):
    code = "SurfaceMismatch"


class NotDefined(GTError):
    code = "NotDefined"


class NotMappingClass(GTError):
    code = "NotMappingClass"


class InvalidPuncture(GTError):
    code = "InvalidPuncture"


class ParseError(GTError):
    code = "ParseError"
