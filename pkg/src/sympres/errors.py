"""Exception types shared across the library."""


class SympresError(Exception):
    """Base class for all library errors."""


class GroupTooLarge(SympresError):
    pass


class NotMember(SympresError):
    pass


class NotEigenvector(SympresError):
    pass


class ValuationInfinite(SympresError):
    pass


class FaceEmpty(SympresError):
    pass


class DegenerateWall(SympresError):
    pass


class NotFaithful(SympresError):
    pass


class Malformed(SympresError):
    pass


class IncompleteTree(SympresError):
    pass


class NotQ8Rep(SympresError):
    pass


class EnumerationBound(SympresError):
    pass
